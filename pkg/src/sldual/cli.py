"""Command-line front end: ingest structure documents, run constructions and
theorem checks, emit machine-readable reports.

Documents are JSON with unique element labels and either Hasse covers
("order") or a full label meet table ("meet"); covers are a convenience and
the meet table is the normative internal form.  Exit codes: 0 ok, 1 parse
error, 2 validation failure, 3 theorem-check counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from ._bits import is_subset
from .core import (
    MonotoneSemilattice,
    Semilattice,
    semilattices_of_size,
    validate_monotone,
    validate_semilattice,
)
from .errors import StructureError
from .extension import (
    build_extension,
    closed_open_elements,
    extension_to_json,
    filter_completion_comparison,
    ideal_avoiding,
    points_avoiding,
    verify_compact,
    verify_dense,
)
from .maps import OrderMap, order_map, pi_ext, sigma_ext
from .modal import (
    compose_star,
    dual_multirelation,
    duality_roundtrip,
    induced_operator,
    is_meet_relation,
    specialization_relation,
)
from .order import (
    all_filters,
    all_order_ideals,
    filter_join,
    irreducible_filters,
    is_F_ideal,
    is_irreducible,
    is_irreducible_char,
    principal_ideal,
    separate,
)
from .report import Report, _jsonable
from .space import (
    check_s_space,
    closure,
    double_dual_map,
    dot_membership,
    dot_specialization,
    dual_elements,
    dual_space,
    element_image,
    filter_of_closed,
    points_containing,
    points_extending,
    subbasic_closed,
    subbasic_saturated,
)
from .vietoris import (
    all_congruences,
    congruence_filter_duality,
    congruence_lattice_json,
    congruence_of_family,
    family_of_congruence,
    monotone_family_check,
    vietoris_lattice,
)

PARSE_ERROR, INVALID, COUNTEREXAMPLE = 1, 2, 3


class DocumentError(Exception):
    pass


@dataclass
class Document:
    semilattice: Semilattice
    monotone: MonotoneSemilattice | None
    maps: dict[str, OrderMap]


def _derive_meet_from_covers(labels, covers, top):
    n = len(labels)
    idx = {s: i for i, s in enumerate(labels)}
    leq = [[i == j for j in range(n)] for i in range(n)]
    for pair in covers:
        if len(pair) != 2 or pair[0] not in idx or pair[1] not in idx:
            raise DocumentError(f"bad cover pair {pair!r}")
        leq[idx[pair[0]]][idx[pair[1]]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise StructureError(("order-cycle", labels[i], labels[j]))
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            lower = [x for x in range(n) if leq[x][a] and leq[x][b]]
            best = [x for x in lower if all(leq[y][x] for y in lower)]
            if len(best) != 1:
                raise StructureError(("no-meet", labels[a], labels[b]))
            table[a][b] = best[0]
    return table


def parse_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    labels = raw.get("elements")
    if (
        not isinstance(labels, list)
        or not labels
        or any(not isinstance(s, str) or not s for s in labels)
        or len(set(labels)) != len(labels)
    ):
        raise DocumentError("'elements' must be a list of unique nonempty strings")
    if ("order" in raw) == ("meet" in raw):
        raise DocumentError("exactly one of 'order' or 'meet' must be present")
    if "top" not in raw or raw["top"] not in labels:
        raise DocumentError("'top' must name an element")
    idx = {s: i for i, s in enumerate(labels)}
    n = len(labels)
    if "meet" in raw:
        rows = raw["meet"]
        if (
            not isinstance(rows, list)
            or len(rows) != n
            or any(not isinstance(r, list) or len(r) != n for r in rows)
            or any(v not in idx for r in rows for v in r)
        ):
            raise DocumentError("'meet' must be an n-by-n table of element labels")
        table = [[idx[v] for v in r] for r in rows]
    else:
        if not isinstance(raw["order"], list):
            raise DocumentError("'order' must be a list of cover pairs")
        table = _derive_meet_from_covers(labels, raw["order"], raw["top"])
    S = validate_semilattice(table, idx[raw["top"]], labels)

    def parse_selfmap(obj, what):
        if not isinstance(obj, dict) or set(obj) != set(labels) or any(
            v not in idx for v in obj.values()
        ):
            raise DocumentError(f"{what} must map every element label to a label")
        return tuple(idx[obj[s]] for s in labels)

    ms = None
    if "monotone" in raw:
        ms = validate_monotone(S, parse_selfmap(raw["monotone"], "'monotone'"))
    maps = {}
    if "maps" in raw:
        if not isinstance(raw["maps"], dict):
            raise DocumentError("'maps' must be an object of named self-maps")
        for name, obj in raw["maps"].items():
            maps[name] = order_map(S, S, parse_selfmap(obj, f"map {name!r}"))
    return Document(S, ms, maps)


def serialize_document(doc: Document) -> str:
    S = doc.semilattice
    labels = [S.label(a) for a in range(S.n)]
    out: dict = {
        "elements": labels,
        "meet": [[labels[S.meet[a][b]] for b in range(S.n)] for a in range(S.n)],
        "top": labels[S.top],
    }
    if doc.monotone is not None:
        out["monotone"] = {labels[a]: labels[doc.monotone.op[a]] for a in range(S.n)}
    if doc.maps:
        out["maps"] = {
            name: {labels[a]: labels[f(a)] for a in range(S.n)}
            for name, f in sorted(doc.maps.items())
        }
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


# -- payload builders ----------------------------------------------------------


def _dual_payload(S: Semilattice) -> dict:
    X = dual_space(S)
    pts = irreducible_filters(S)
    return {
        "points": {X.label(i): S.subset_label(p) for i, p in enumerate(pts)},
        "subbase": [X.set_label(u) for u in X.subbase],
        "element_image": {S.label(a): X.set_label(points_containing(S, a)) for a in range(S.n)},
    }


def _extend_payload(S: Semilattice, name: str, f: OrderMap) -> dict:
    ext = build_extension(S)
    X = ext.dual
    return {
        "map": name,
        "sigma": {X.set_label(v): X.set_label(sigma_ext(f, v)) for v in ext.elements},
        "pi": {X.set_label(v): X.set_label(pi_ext(f, v)) for v in ext.elements},
    }


# -- verification suites -------------------------------------------------------


def verify_semilattice(S: Semilattice, *, seed: int = 0, limit: int = 12) -> Report:
    """Every single-structure law of the plain duality, one check per theorem."""
    rep = Report("verify")
    filters = all_filters(S)
    ideals = all_order_ideals(S)
    X = dual_space(S)
    ext = build_extension(S)

    proper = [f for f in filters if f != S.carrier]
    rep.add(
        "irreducibility-characterization-agrees",
        all(is_irreducible(S, f) == is_irreducible_char(S, f) for f in proper),
    )
    rep.add(
        "irreducible-iff-complement-relative-ideal",
        all(
            is_irreducible(S, f) == is_F_ideal(S, f, S.carrier & ~f) for f in proper
        ),
    )
    sep_ok = True
    for f in filters:
        for i in ideals:
            if f & i == 0:
                p = separate(S, f, i)
                if not (is_subset(f, p) and p & i == 0):
                    sep_ok = False
    rep.add("separation-succeeds", sep_ok)
    rep.add(
        "order-ideals-are-principal",
        set(ideals) == {principal_ideal(S, a) for a in range(S.n)},
    )
    rep.add(
        "filters-form-complete-lattice",
        all(f & g in set(filters) for f in filters for g in filters)
        and all(filter_join(S, [f, g]) in set(filters) for f in filters for g in filters),
    )

    srep = check_s_space(X, cap=limit, seed=seed)
    for c in srep.checks:
        rep.add(f"dual-space-{c.name}", c.passed, c.witness, c.partial)
    beta_tab = element_image(S)
    rep.add(
        "element-map-is-isomorphism",
        len(set(beta_tab)) == S.n
        and set(beta_tab) == set(dual_elements(X))
        and all(
            beta_tab[S.meet[a][b]] == beta_tab[a] & beta_tab[b]
            for a in range(S.n)
            for b in range(S.n)
        )
        and beta_tab[S.top] == X.full,
    )
    cks = subbasic_closed(X)
    rep.add(
        "filters-closed-sets-dual-bijection",
        sorted(points_extending(S, f) for f in filters) == sorted(cks)
        and all(filter_of_closed(S, points_extending(S, f)) == f for f in filters)
        and all(points_extending(S, filter_of_closed(S, y)) == y for y in cks),
    )
    zs = subbasic_saturated(X)
    rep.add(
        "ideals-saturated-sets-dual-bijection",
        sorted(points_avoiding(S, i) for i in ideals) == sorted(zs)
        and all(ideal_avoiding(S, points_avoiding(S, i)) == i for i in ideals)
        and all(points_avoiding(S, ideal_avoiding(S, z)) == z for z in zs),
    )
    # The intersection identity for closures holds pointwise (and for images
    # of star composites, asserted inside compose_star), not for arbitrary
    # subsets: a union of two closed sets is closed but need not be an
    # intersection of dual elements.
    rep.add(
        "point-closure-matches-dual-element-intersection",
        all(
            closure(X, 1 << x) == _intersect_over(dual_elements(X), 1 << x, X.full)
            for x in range(X.n_points)
        ),
    )
    rep.add(
        "meet-compactness-bridge",
        all(
            (points_extending(S, f) & points_avoiding(S, i) == 0) == (f & i != 0)
            for f in filters
            for i in ideals
        ),
    )
    try:
        double_dual_map(X)
        rep.add("double-dual-homeomorphism", True)
    except StructureError as exc:
        rep.add("double-dual-homeomorphism", False, exc.witness)

    rep.add("extension-collapses-to-closed-sets", ext.elements == cks)
    drep = verify_dense(ext)
    rep.add("extension-dense", drep.ok, [c.to_dict() for c in drep.failures()] or None)
    crep = verify_compact(ext)
    rep.add("extension-compact", crep.ok, [c.to_dict() for c in crep.failures()] or None)
    try:
        closed_open_elements(ext)
        rep.add("closed-open-elements-match", True)
    except RuntimeError as exc:
        rep.add("closed-open-elements-match", False, str(exc))
    if len(filters) <= limit:
        grep = filter_completion_comparison(S, fi2_limit=max(limit, len(filters)))
        rep.add(
            "filter-completion-comparison",
            grep.ok,
            [c.to_dict() for c in grep.failures()] or None,
        )

    cons = all_congruences(S)
    fam_members = set()
    round_ok = True
    for th in cons:
        fam = family_of_congruence(S, th)
        fam_members.add(fam.members)
        if congruence_of_family(S, fam).classes != th.classes:
            round_ok = False
    rep.add("congruence-family-roundtrips", round_ok)
    frep = congruence_filter_duality(S)
    rep.add(
        "congruence-filter-duality",
        frep.ok,
        [c.to_dict() for c in frep.failures()] or None,
    )
    nonempty_closed = [c for c in cks if c != 0]
    if len(nonempty_closed) <= limit:
        vl = vietoris_lattice(X)
        rep.add(
            "vietoris-lattice-matches-congruences",
            vl.report.ok and len(vl.families) == len(cons) == len(fam_members),
            [c.to_dict() for c in vl.report.failures()] or None,
        )
    return rep


def _intersect_over(family, mask, full):
    out = full
    for u in family:
        if is_subset(mask, u):
            out &= u
    return out


def verify_monotone(ms: MonotoneSemilattice, *, seed: int = 0, limit: int = 12) -> Report:
    """Operator-dependent laws: the dual multirelation and its round trips."""
    rep = Report("verify-monotone")
    S = ms.base
    try:
        mss = dual_multirelation(ms)
        rep.add("dual-multirelation-axioms", True)
    except (StructureError, RuntimeError) as exc:
        rep.add("dual-multirelation-axioms", False, repr(exc))
        return rep
    beta_tab = element_image(S)
    rep.add(
        "operator-commutes-with-element-map",
        all(
            induced_operator(mss.rel, beta_tab[a]) == beta_tab[ms.op[a]]
            for a in range(S.n)
        ),
    )
    arep = duality_roundtrip(ms)
    rep.add("algebra-roundtrip", arep.ok, [c.to_dict() for c in arep.failures()] or None)
    srep = duality_roundtrip(mss)
    rep.add("space-roundtrip", srep.ok, [c.to_dict() for c in srep.failures()] or None)
    ident = specialization_relation(mss.space)
    rep.add(
        "identity-laws",
        compose_star(ident, ident).pairs == ident.pairs
        and is_meet_relation(ident),
    )
    f = order_map(S, S, ms.op)
    ext = build_extension(S)
    try:
        rep.add(
            "extension-presentations-agree",
            all(
                is_subset(sigma_ext(f, v), pi_ext(f, v)) for v in ext.elements
            ),
        )
    except RuntimeError as exc:
        rep.add("extension-presentations-agree", False, str(exc))
    cons = all_congruences(S, ms.op)
    X = mss.space
    fams = set()
    ok_mono = True
    for th in cons:
        fam = family_of_congruence(S, th)
        fams.add(fam.members)
        if not monotone_family_check(mss, fam.members).ok:
            ok_mono = False
    rep.add("congruence-families-are-monotone", ok_mono)
    nonempty_closed = [c for c in subbasic_closed(X) if c != 0]
    if len(nonempty_closed) <= limit:
        vl = vietoris_lattice(X, mss)
        rep.add(
            "monotone-vietoris-lattice-matches-congruences",
            vl.report.ok and len(vl.families) == len(cons) == len(fams),
            [c.to_dict() for c in vl.report.failures()] or None,
        )
    return rep


def verify_map(S: Semilattice, name: str, f: OrderMap) -> Report:
    rep = Report(f"verify-map-{name}")
    ext = build_extension(S)
    try:
        values = [(sigma_ext(f, v), pi_ext(f, v)) for v in ext.elements]
    except RuntimeError as exc:
        rep.add("presentations-agree", False, str(exc))
        return rep
    rep.add("presentations-agree", True)
    rep.add("lower-below-upper", all(is_subset(s, p) for s, p in values))
    rep.add(
        "extends-the-map",
        all(
            sigma_ext(f, points_containing(S, a))
            == pi_ext(f, points_containing(S, a))
            == points_containing(S, f(a))
            for a in range(S.n)
        ),
    )
    return rep


def run_verify_all(doc: Document, *, seed: int, limit: int, keep_going: bool) -> Report:
    rep = Report("verify-all")
    parts = [verify_semilattice(doc.semilattice, seed=seed, limit=limit)]
    if doc.monotone is not None:
        parts.append(verify_monotone(doc.monotone, seed=seed, limit=limit))
    for name, f in sorted(doc.maps.items()):
        parts.append(verify_map(doc.semilattice, name, f))
    for part in parts:
        for c in part.checks:
            rep.checks.append(c)
            if not c.passed and not keep_going:
                return rep
    return rep


# -- command dispatch ----------------------------------------------------------


def _emit(args, command: str, status: str, payload: dict, checks: Report | None) -> None:
    if getattr(args, "quiet", False):
        return
    body = {
        "command": command,
        "status": status,
        "payload": _jsonable(payload),
        "checks": [c.to_dict() for c in checks.checks] if checks else [],
    }
    print(json.dumps(body, indent=2, sort_keys=True))


def _load(args) -> Document:
    with open(args.file, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


def cmd_validate(args) -> int:
    doc = _load(args)
    payload = {
        "elements": doc.semilattice.n,
        "top": doc.semilattice.label(doc.semilattice.top),
        "monotone": doc.monotone is not None,
        "maps": sorted(doc.maps),
        "document": json.loads(serialize_document(doc)),
    }
    _emit(args, "validate", "ok", payload, None)
    return 0


def cmd_dual(args) -> int:
    doc = _load(args)
    S = doc.semilattice
    rep = check_s_space(dual_space(S), cap=args.limit, seed=args.seed)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot_specialization(dual_space(S)))
            fh.write(dot_membership(S))
    status = "ok" if rep.ok else "counterexample"
    _emit(args, "dual", status, _dual_payload(S), rep)
    return 0 if rep.ok else COUNTEREXAMPLE


def cmd_canext(args) -> int:
    doc = _load(args)
    S = doc.semilattice
    ext = build_extension(S)
    rep = Report("canext")
    for part in (verify_dense(ext), verify_compact(ext)):
        for c in part.checks:
            rep.checks.append(c)
    payload = extension_to_json(ext)
    status = "ok" if rep.ok else "counterexample"
    _emit(args, "canext", status, payload, rep)
    return 0 if rep.ok else COUNTEREXAMPLE


def cmd_extend(args) -> int:
    doc = _load(args)
    S = doc.semilattice
    targets: dict[str, OrderMap] = dict(doc.maps)
    if doc.monotone is not None:
        targets.setdefault("monotone", order_map(S, S, doc.monotone.op))
    if not targets:
        raise DocumentError("document has no 'monotone' operator and no 'maps'")
    rep = Report("extend")
    payload = {"extensions": []}
    for name in sorted(targets):
        payload["extensions"].append(_extend_payload(S, name, targets[name]))
        for c in verify_map(S, name, targets[name]).checks:
            rep.checks.append(c)
    status = "ok" if rep.ok else "counterexample"
    _emit(args, "extend", status, payload, rep)
    return 0 if rep.ok else COUNTEREXAMPLE


def cmd_congruences(args) -> int:
    doc = _load(args)
    S = doc.semilattice
    op = doc.monotone.op if doc.monotone is not None else None
    payload = congruence_lattice_json(S, op)
    rep = congruence_filter_duality(S)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(_dot_congruences(payload))
    status = "ok" if rep.ok else "counterexample"
    _emit(args, "congruences", status, payload, rep)
    return 0 if rep.ok else COUNTEREXAMPLE


def _dot_congruences(payload: dict) -> str:
    lines = ["digraph congruences {", "  rankdir=BT;"]
    names = ["|".join(c["classes"]) for c in payload["congruences"]]
    for name in names:
        lines.append(f'  "{name}";')
    for lo, hi in payload["covers"]:
        lines.append(f'  "{names[lo]}" -> "{names[hi]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_vietoris(args) -> int:
    doc = _load(args)
    S = doc.semilattice
    X = dual_space(S)
    mss = dual_multirelation(doc.monotone) if doc.monotone is not None else None
    vl = vietoris_lattice(X, mss, cap=args.limit)
    payload = {
        "families": [[X.set_label(m) for m in fam] for fam in vl.families],
        "order": [
            [i, j]
            for i in range(len(vl.families))
            for j in range(len(vl.families))
            if vl.leq[i][j]
        ],
    }
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(_dot_vietoris(X, vl))
    status = "ok" if vl.report.ok else "counterexample"
    _emit(args, "vietoris", status, payload, vl.report)
    return 0 if vl.report.ok else COUNTEREXAMPLE


def _dot_vietoris(X, vl) -> str:
    lines = ["digraph vietoris {", "  rankdir=BT;"]
    names = ["{" + ",".join(X.set_label(m) for m in fam) + "}" for fam in vl.families]
    for name in names:
        lines.append(f'  "{name}";')
    n = len(names)
    for i in range(n):
        for j in range(n):
            if i != j and vl.leq[i][j]:
                if not any(
                    k not in (i, j) and vl.leq[i][k] and vl.leq[k][j] for k in range(n)
                ):
                    lines.append(f'  "{names[i]}" -> "{names[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_verify_all(args) -> int:
    doc = _load(args)
    rep = run_verify_all(doc, seed=args.seed, limit=args.limit, keep_going=args.all)
    status = "ok" if rep.ok else "counterexample"
    _emit(args, "verify-all", status, {}, rep)
    return 0 if rep.ok else COUNTEREXAMPLE


def cmd_enumerate(args) -> int:
    n = args.n
    rep = Report("enumerate")
    listing = []
    ok = True
    for S in semilattices_of_size(n):
        entry = {
            "meet": [list(row) for row in S.meet],
            "top": S.top,
        }
        if args.verify:
            sub = verify_semilattice(S, seed=args.seed, limit=args.limit)
            entry["ok"] = sub.ok
            if not sub.ok:
                ok = False
                entry["failures"] = [c.to_dict() for c in sub.failures()]
        listing.append(entry)
    rep.add("all-structures-verified" if args.verify else "enumerated", ok)
    payload = {"n": n, "count": len(listing), "structures": listing}
    status = "ok" if ok else "counterexample"
    _emit(args, "enumerate", status, payload, rep)
    return 0 if ok else COUNTEREXAMPLE


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled quantifiers")
    common.add_argument("--limit", type=int, default=12, help="bound for expensive quantifiers")
    common.add_argument("--json", action="store_true", help="JSON output (default)")
    common.add_argument("--quiet", action="store_true", help="suppress output; rely on exit code")
    parser = argparse.ArgumentParser(
        prog="sldual",
        description="Finite duality toolkit for meet-semilattices with monotone operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_file=True, dot=False):
        p = sub.add_parser(name, parents=[common])
        if needs_file:
            p.add_argument("file")
        if dot:
            p.add_argument("--dot", help="write DOT diagram(s) to this path")
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate)
    add("dual", cmd_dual, dot=True)
    add("canext", cmd_canext)
    add("extend", cmd_extend)
    add("congruences", cmd_congruences, dot=True)
    add("vietoris", cmd_vietoris, dot=True)
    p = add("verify-all", cmd_verify_all)
    p.add_argument("--all", action="store_true", help="run all checks instead of stopping at the first failure")
    p = add("enumerate", cmd_enumerate, needs_file=False)
    p.add_argument("n", type=int)
    p.add_argument("--verify", action="store_true")

    args = parser.parse_args(argv)
    if not hasattr(args, "all"):
        args.all = False
    try:
        return args.fn(args)
    except (DocumentError, FileNotFoundError, IsADirectoryError) as exc:
        _emit(args, args.command, "parse-error", {"error": str(exc)}, None)
        return PARSE_ERROR
    except StructureError as exc:
        _emit(
            args,
            args.command,
            "invalid",
            {"error": type(exc).__name__, "witness": _jsonable(exc.witness)},
            None,
        )
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
