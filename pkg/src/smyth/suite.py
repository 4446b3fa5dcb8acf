"""Named property checks, suite scopes, and witness replay.

Every property is a total function from a JSON-ready payload to a
CheckReport and is registered by name, so a failing report can always
be replayed: feed ``witness["instance"]`` back to the property that
produced it.  Suites are deterministic: the same scope and seed produce
the same report list, byte for byte.
"""

from __future__ import annotations

import random
import zlib

from .completion import (
    SupExtensionProblem,
    check_retraction,
    check_sigma_theorem,
    is_sup_preserving,
    lambda_sharp,
)
from .docio import document_from_payload, document_of_poset, point_lists
from .errors import CapacityError, RangeError, SigmaUndefinedError
from .generators import all_monotone_images, all_posets, random_monotone_map, random_poset
from .maps import (
    MonotoneMap,
    anchored_extensions,
    check_functor_laws,
    check_minimality,
    enumerate_extensions,
    identity,
    is_order_isomorphism,
    lift_homeomorphism,
    powerdomain_map,
)
from .poset import (
    FinitePoset,
    dimension,
    find_isomorphism,
    is_chain,
    iter_bits,
    relabel,
)
from .powerdomain import (
    basic_open,
    build,
    check_embedding_theorem,
    hat_powerdomain,
    is_phi_surjective,
    powerdomain_dimension,
)
from .report import CheckReport, failed, instance_text, passed, skipped
from .topology import open_sets, poset_of_topology

SAMPLED_MAPS = 10
MINIMALITY_CAPACITY = 4096
ENUMERATION_CAPACITY = 1 << 16


def _poset_of(payload: dict) -> FinitePoset:
    return document_from_payload(payload).to_poset()


def _instance_seed(payload: dict) -> int:
    return zlib.crc32(instance_text(payload).encode())


def _with_instance(report: CheckReport, payload: dict) -> CheckReport:
    """Rebind a lower-level report to the suite's instance payload."""
    if report.verdict == "fail":
        witness = dict(report.witness or {})
        witness["instance"] = payload
        witness.setdefault("detail", report.instance)
        return CheckReport(report.property, report.instance, report.verdict,
                           report.reason, witness)
    return report


def prop_topology_round_trip(payload: dict) -> CheckReport:
    """Opens determine the order: rebuilding from the topology is exact."""
    prop = "topology-round-trip"
    poset = _poset_of(payload)
    recovered = poset_of_topology(open_sets(poset))
    if recovered != poset:
        return failed(prop, payload,
                      recovered_covers=[list(p) for p in recovered.cover_pairs()])
    return passed(prop, payload)


def prop_embedding_theorem(payload: dict) -> CheckReport:
    poset = _poset_of(payload)
    report = check_embedding_theorem(build(poset))
    return _with_instance(report, payload)


def prop_powerdomain_dimension(payload: dict) -> CheckReport:
    """dim of the powerdomain is n - 1, at least dim of the base,
    with equality exactly for chains."""
    prop = "powerdomain-dimension"
    poset = _poset_of(payload)
    space = build(poset)
    pd_dim = powerdomain_dimension(space)
    base_dim = dimension(poset)
    if pd_dim != poset.n - 1:
        return failed(prop, payload, law="n-minus-one", got=pd_dim)
    if pd_dim < base_dim:
        return failed(prop, payload, law="at-least-base", got=pd_dim,
                      base=base_dim)
    if (pd_dim == base_dim) != is_chain(poset):
        return failed(prop, payload, law="equality-iff-chain", got=pd_dim,
                      base=base_dim)
    return passed(prop, payload)


def prop_phi_onto_iff_chain(payload: dict) -> CheckReport:
    """The principal-point map is onto exactly over a linear base."""
    prop = "phi-onto-iff-chain"
    poset = _poset_of(payload)
    space = build(poset)
    onto = len(set(space.phi_index)) == len(space.points)
    if onto != is_chain(poset):
        return failed(prop, payload, onto=onto)
    if onto and is_phi_surjective(space):
        if find_isomorphism(poset, space.order) is None:
            return failed(prop, payload, law="onto-gives-isomorphism")
    return passed(prop, payload)


def prop_zariski_equals_vietoris(payload: dict) -> CheckReport:
    """Containment opens and order-principal opens agree on every open."""
    prop = "zariski-equals-vietoris"
    poset = _poset_of(payload)
    space = build(poset)
    for omega in open_sets(poset).opens:
        direct = basic_open(space, omega)
        index = space.point_index.get(omega)
        if index is None:
            via_order: frozenset[int] = frozenset()
        else:
            via_order = frozenset(iter_bits(space.order.down[index]))
        if direct != via_order:
            return failed(prop, payload, open=omega,
                          direct=sorted(direct), via_order=sorted(via_order))
    hat = hat_powerdomain(poset)
    if basic_open(hat, 0) != frozenset({0}) or hat.points[0] != 0:
        return failed(prop, payload, law="empty-open-bottom")
    return passed(prop, payload)


def _endo_pairs(poset: FinitePoset, payload: dict) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    if poset.n <= 3:
        images = all_monotone_images(poset, poset)
        return [(f, g) for f in images for g in images]
    rng = random.Random(_instance_seed(payload))
    maps: list[tuple[int, ...]] = []
    attempts = 0
    while len(maps) < SAMPLED_MAPS and attempts < 50 * SAMPLED_MAPS:
        attempts += 1
        drawn = random_monotone_map(poset, poset, rng)
        if drawn is not None:
            maps.append(drawn.image)
    return [(f, g) for f in maps for g in maps]


def prop_functor_laws(payload: dict) -> CheckReport:
    """Composition and identity survive the powerdomain construction."""
    prop = "functor-laws"
    poset = _poset_of(payload)
    for f_img, g_img in _endo_pairs(poset, payload):
        f = MonotoneMap(poset, poset, f_img)
        g = MonotoneMap(poset, poset, g_img)
        report = check_functor_laws(f, g)
        if not report.ok:
            return _with_instance(report, payload)
    return passed(prop, payload)


def prop_extension_minimality(payload: dict) -> CheckReport:
    """The induced powerdomain map is least among extensions.

    Exercised against every monotone map into the two-element chain
    (the Sierpinski-valued maps); enumeration beyond the capacity is
    reported as skipped, not guessed.
    """
    prop = "extension-minimality"
    poset = _poset_of(payload)
    chain2 = FinitePoset.from_cover_relations(2, [(0, 1)])
    try:
        for image in all_monotone_images(poset, chain2):
            report = check_minimality(
                MonotoneMap(poset, chain2, image), MINIMALITY_CAPACITY
            )
            if not report.ok:
                return _with_instance(report, payload)
    except CapacityError as exc:
        return skipped(prop, payload, f"enumeration over budget: {exc}")
    return passed(prop, payload)


def prop_lift_round_trip(payload: dict) -> CheckReport:
    """Lifting inverts inducing on a relabeled copy of the base."""
    prop = "lift-round-trip"
    poset = _poset_of(payload)
    rotation = tuple((i + 1) % poset.n for i in range(poset.n))
    other = relabel(poset, rotation)
    sigma = MonotoneMap(poset, other, rotation)
    induced_iso = powerdomain_map(sigma)
    if not is_order_isomorphism(induced_iso):
        return failed(prop, payload, law="induced-map-is-isomorphism")
    lifted = lift_homeomorphism(build(poset), build(other), induced_iso)
    if lifted != sigma:
        return failed(prop, payload, law="lift-after-induce",
                      got=list(lifted.image))
    if powerdomain_map(lifted) != induced_iso:
        return failed(prop, payload, law="induce-after-lift")
    return passed(prop, payload)


def prop_sup_extension(payload: dict) -> CheckReport:
    """Sup-extension laws for the identity map, where sups allow it."""
    prop = "sup-extension"
    poset = _poset_of(payload)
    problem = SupExtensionProblem.for_map(identity(poset))
    try:
        report = check_sigma_theorem(problem, ENUMERATION_CAPACITY)
        if not report.ok:
            return _with_instance(report, payload)
        retraction = check_retraction(poset)
        if not retraction.ok:
            return _with_instance(retraction, payload)
    except SigmaUndefinedError as exc:
        return skipped(prop, payload, f"not sup-complete: {exc}")
    except CapacityError as exc:
        return skipped(prop, payload, f"enumeration over budget: {exc}")
    return passed(prop, payload)


def prop_sup_extension_of_embedding(payload: dict) -> CheckReport:
    """Extending the principal embedding along sups is the identity."""
    prop = "sup-extension-of-embedding"
    poset = _poset_of(payload)
    space = build(poset)
    into_points = MonotoneMap(poset, space.order, space.phi_index)
    problem = SupExtensionProblem(into_points, space)
    sharp = lambda_sharp(problem)
    if sharp.image != tuple(range(space.order.n)):
        return failed(prop, payload, got=list(sharp.image))
    if not is_sup_preserving(sharp):
        return failed(prop, payload, law="sup-preserving")
    if space.order.n <= 12:
        report = check_sigma_theorem(problem, ENUMERATION_CAPACITY)
        if not report.ok:
            return _with_instance(report, payload)
    return passed(prop, payload)


def prop_fixture_expectations(payload: dict) -> CheckReport:
    """Pinned powerdomain facts recorded in a document's expect block."""
    prop = "fixture-expectations"
    doc = document_from_payload(payload)
    if doc.expect is None:
        return skipped(prop, payload, "no expectations recorded")
    poset = doc.to_poset()
    space = build(poset)
    expect = doc.expect
    if "points" in expect and point_lists(space) != expect["points"]:
        return failed(prop, payload, key="points", actual=point_lists(space))
    if "point_count" in expect and len(space.points) != expect["point_count"]:
        return failed(prop, payload, key="point_count",
                      actual=len(space.points))
    if "dimension" in expect and powerdomain_dimension(space) != expect["dimension"]:
        return failed(prop, payload, key="dimension",
                      actual=powerdomain_dimension(space))
    if "phi_onto" in expect and is_phi_surjective(space) != expect["phi_onto"]:
        return failed(prop, payload, key="phi_onto",
                      actual=is_phi_surjective(space))
    return passed(prop, payload)


def prop_fixture_vee_to_chain(payload: dict) -> CheckReport:
    """The two-minimal-points base mapped onto a chain, with its
    non-minimal second extension."""
    prop = "fixture-vee-to-chain"
    vee = FinitePoset.from_cover_relations(3, [(0, 2), (1, 2)], ("a1", "a2", "b"))
    chain = FinitePoset.from_cover_relations(2, [(0, 1)], ("c1", "c2"))
    psi = MonotoneMap(vee, chain, (0, 0, 1))
    source_space = build(vee)
    target_space = build(chain)
    if source_space.points != (0b001, 0b010, 0b011, 0b111):
        return failed(prop, payload, law="source-points",
                      actual=list(source_space.points))
    if target_space.points != (0b01, 0b11):
        return failed(prop, payload, law="target-points",
                      actual=list(target_space.points))
    induced_map = powerdomain_map(psi)
    if induced_map.image != (0, 0, 0, 1):
        return failed(prop, payload, law="induced-image",
                      actual=list(induced_map.image))
    extensions = enumerate_extensions(psi)
    images = [e.image for e in extensions]
    if (0, 0, 1, 1) not in images or induced_map.image not in images:
        return failed(prop, payload, law="extensions",
                      actual=[list(i) for i in images])
    for ext in images:
        if any(
            target_space.points[induced_map.image[k]]
            & ~target_space.points[ext[k]]
            for k in range(4)
        ):
            return failed(prop, payload, law="pointwise-least",
                          candidate=list(ext))
    if find_isomorphism(source_space.order, target_space.order) is not None:
        return failed(prop, payload, law="non-isomorphic-powerdomains")
    return passed(prop, payload)


def prop_fixture_discrete_collapse(payload: dict) -> CheckReport:
    """On a three-point discrete base, the collapse sending one doubleton
    to the top is monotone and anchored but not sup-preserving."""
    prop = "fixture-discrete-collapse"
    discrete = FinitePoset.from_cover_relations(3, [], ("a", "b", "c"))
    space = build(discrete)
    order = space.order
    pair_ab = space.point_index[0b011]
    top = space.point_index[0b111]
    collapse_image = tuple(
        top if i == pair_ab else i for i in range(order.n)
    )
    collapse = MonotoneMap(order, order, collapse_image)
    into_points = MonotoneMap(discrete, order, space.phi_index)
    problem = SupExtensionProblem(into_points, space)
    anchors = {space.phi_index[x]: space.phi_index[x] for x in range(3)}
    if collapse_image not in anchored_extensions(order, anchors, order):
        return failed(prop, payload, law="collapse-is-an-extension")
    sharp = lambda_sharp(problem)
    if sharp.image != tuple(range(order.n)):
        return failed(prop, payload, law="sharp-is-identity",
                      actual=list(sharp.image))
    for x in range(3):
        if collapse.image[space.phi_index[x]] != space.phi_index[x]:
            return failed(prop, payload, law="collapse-is-anchored", element=x)
    if is_sup_preserving(collapse):
        return failed(prop, payload, law="collapse-not-sup-preserving")
    if not all(order.leq(sharp.image[i], collapse.image[i]) for i in range(order.n)):
        return failed(prop, payload, law="sharp-below-collapse")
    report = check_sigma_theorem(problem, ENUMERATION_CAPACITY)
    if not report.ok:
        return _with_instance(report, payload)
    return passed(prop, payload)


PROPERTIES = {
    "topology-round-trip": prop_topology_round_trip,
    "embedding-theorem": prop_embedding_theorem,
    "powerdomain-dimension": prop_powerdomain_dimension,
    "phi-onto-iff-chain": prop_phi_onto_iff_chain,
    "zariski-equals-vietoris": prop_zariski_equals_vietoris,
    "functor-laws": prop_functor_laws,
    "extension-minimality": prop_extension_minimality,
    "lift-round-trip": prop_lift_round_trip,
    "sup-extension": prop_sup_extension,
    "sup-extension-of-embedding": prop_sup_extension_of_embedding,
    "fixture-expectations": prop_fixture_expectations,
    "fixture-vee-to-chain": prop_fixture_vee_to_chain,
    "fixture-discrete-collapse": prop_fixture_discrete_collapse,
}

PER_POSET_PROPERTIES = (
    "topology-round-trip",
    "embedding-theorem",
    "powerdomain-dimension",
    "phi-onto-iff-chain",
    "zariski-equals-vietoris",
    "functor-laws",
    "extension-minimality",
    "lift-round-trip",
    "sup-extension",
    "sup-extension-of-embedding",
)

SUITE_GROUPS = {
    "embedding": (
        "topology-round-trip",
        "embedding-theorem",
        "powerdomain-dimension",
        "phi-onto-iff-chain",
        "zariski-equals-vietoris",
    ),
    "functor": (
        "functor-laws",
        "extension-minimality",
        "lift-round-trip",
    ),
    "sigma": (
        "sup-extension",
        "sup-extension-of-embedding",
    ),
    "all": PER_POSET_PROPERTIES,
}

FIXTURE_DOCS = (
    {
        "n": 3,
        "labels": ["a1", "a2", "b"],
        "covers": [[0, 2], [1, 2]],
        "expect": {
            "points": [[0], [1], [0, 1], [0, 1, 2]],
            "point_count": 4,
            "dimension": 2,
            "phi_onto": False,
        },
    },
    {
        "n": 2,
        "labels": ["c1", "c2"],
        "covers": [[0, 1]],
        "expect": {
            "points": [[0], [0, 1]],
            "point_count": 2,
            "dimension": 1,
            "phi_onto": True,
        },
    },
    {
        "n": 3,
        "labels": ["a", "b", "c"],
        "covers": [],
        "expect": {
            "points": [[0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]],
            "point_count": 7,
            "dimension": 2,
            "phi_onto": False,
        },
    },
    {
        "n": 16,
        "labels": [f"x{r}{c}" for r in range(4) for c in range(4)],
        "covers": sorted(
            [[4 * r + c, 4 * (r + 1) + c] for r in range(3) for c in range(4)]
            + [[4 * r + c, 4 * r + c + 1] for r in range(4) for c in range(3)]
        ),
        "expect": {"point_count": 69, "dimension": 15, "phi_onto": False},
    },
)


def run_suite(scope: str) -> list[CheckReport]:
    """Run the named scope and return its reports in canonical order.

    Scopes: ``exhaustive-N`` (all labeled posets on N elements),
    ``fixtures`` (the shipped instances plus their pinned scenarios),
    and ``random:COUNT:SIZE:SEED`` (reproducible random posets).
    """
    reports: list[CheckReport] = []
    if scope.startswith("exhaustive-"):
        try:
            n = int(scope.split("-", 1)[1])
        except ValueError as exc:
            raise RangeError(f"bad scope {scope!r}") from exc
        for poset in all_posets(n):
            payload = document_of_poset(poset).to_payload()
            for name in PER_POSET_PROPERTIES:
                reports.append(PROPERTIES[name](payload))
        return reports
    if scope == "fixtures":
        for payload in FIXTURE_DOCS:
            for name in PER_POSET_PROPERTIES:
                reports.append(PROPERTIES[name](payload))
            reports.append(prop_fixture_expectations(payload))
        reports.append(prop_fixture_vee_to_chain({"fixture": "vee-to-chain"}))
        reports.append(
            prop_fixture_discrete_collapse({"fixture": "discrete-collapse"})
        )
        return reports
    if scope.startswith("random:"):
        parts = scope.split(":")
        if len(parts) != 4:
            raise RangeError(f"bad scope {scope!r}; want random:COUNT:SIZE:SEED")
        try:
            count, size, seed = (int(p) for p in parts[1:])
        except ValueError as exc:
            raise RangeError(f"bad scope {scope!r}") from exc
        for k in range(count):
            poset = random_poset(1 + (k % size), seed + k)
            payload = document_of_poset(poset).to_payload()
            for name in PER_POSET_PROPERTIES:
                reports.append(PROPERTIES[name](payload))
        return reports
    raise RangeError(f"unknown scope {scope!r}")


def replay(report: CheckReport) -> CheckReport:
    """Re-run the property that produced a failing report on its witness."""
    if report.witness is None or "instance" not in report.witness:
        raise RangeError("the report carries no replayable witness")
    return PROPERTIES[report.property](report.witness["instance"])


def check_payload(payload: dict, suite: str) -> list[CheckReport]:
    """Run one suite group against a single document payload."""
    if suite not in SUITE_GROUPS:
        raise RangeError(f"unknown suite {suite!r}")
    names = list(SUITE_GROUPS[suite])
    if payload.get("expect") is not None:
        names.append("fixture-expectations")
    return [PROPERTIES[name](payload) for name in names]
