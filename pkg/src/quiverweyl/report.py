"""The analysis pipeline and its JSON/text reports.

Everything in a report is keyed by vertex names and ordered by them, so the
output does not depend on the order vertices or edges appear in the input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .actions import (
    IotaError,
    check_intertwining,
    coxeter_relations,
    image_order,
    iota,
    wvw_generators,
    wvw_type,
)
from .leaves import LeafDescriptor, assemble_namikawa_weyl, enumerate_codim2_leaves_general, leaf_dimension
from .problem import ProblemFile
from .quiver import FramedProblem, Quiver, is_in_fundamental_region, p_value, pair_simple
from .roots import enumerate_positive_roots
from .sigma import (
    DecompositionTable,
    StringDecomposition,
    canonical_string_decomposition,
    framed_weight,
    sigma0_feasible,
)
from .cartan import AFFINE, classify_form

SCHEMA = "quiverweyl.report/1"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERDICT = 2


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _names(q: Quiver, idx) -> list[str]:
    rank = {i: r for r, i in enumerate(q.name_order())}
    return [q.vertices[i] for i in sorted(idx, key=rank.get)]


def _vec(q: Quiver, u) -> dict:
    return q.as_dict(u)


def _order(n):
    return n if n is not None else "infinite"


def _input_echo(problem: ProblemFile) -> dict:
    edges = sorted([sorted([a, b]) + [m] for a, b, m in problem.edges])
    out = {
        "vertices": sorted(problem.vertices),
        "edges": edges,
        "v": dict(problem.v),
        "w": dict(problem.w),
    }
    if problem.lam is not None:
        out["lambda"] = {k: str(x) for k, x in problem.lam.items() if x}
    return out


def _decomposition(q: Quiver, sd: StringDecomposition) -> dict:
    factors = []
    for f in sd.factors:
        d = {"kind": f.kind, "vector": _vec(q, f.vector), "frame_vertex": None if f.frame_vertex is None else q.vertices[f.frame_vertex]}
        if f.delta is not None:
            d["delta"] = _vec(q, f.delta)
            d["multiplicity"] = f.multiplicity
        factors.append(d)
    return {
        "is_string": sd.is_string,
        "factors": factors,
        "connectors": [[q.vertices[i] for i in c] for c in sd.connectors],
    }


def _parts(q: Quiver, parts) -> list:
    return [{"vector": _vec(q, v), "mult": m} for v, m in parts]


def _leaf(q: Quiver, lf: LeafDescriptor) -> dict:
    cq = lf.component_quiver
    return {
        "factor": lf.factor,
        "kind": lf.kind,
        "rep_type": _parts(q, lf.rep_type.parts),
        "active_parts": _parts(q, lf.active.parts),
        "dimension": leaf_dimension(q, lf.rep_type),
        "slice_quiver": {
            "nodes": [{"vector": _vec(q, u), "dim": d} for u, d in zip(lf.components, lf.component_dims)],
            "edges": [[i, j, m] for i, j, m in cq.edges()],
            "deleted_node": lf.deleted_node,
        },
        "coordinates": [_vec(q, u) for u in lf.coordinates],
        "folded_cartan": [list(r) for r in lf.folded_cartan],
        "slice_type": lf.slice_type.label,
        "slice_order": lf.slice_type.order,
        "warnings": list(lf.warnings),
    }


@dataclass
class Analysis:
    report: dict
    exit_code: int
    fp: FramedProblem | None = None
    leaves: list = field(default_factory=list)


def structural_checks(fp: FramedProblem, leaves) -> dict:
    q = fp.framed
    target = 2 * p_value(q, fp.vtilde) - 2
    codim = all(leaf_dimension(q, lf.rep_type) == target for lf in leaves)
    affine = True
    for lf in leaves:
        fc = classify_form(lf.component_quiver.cartan_matrix())
        affine = affine and fc.kind == AFFINE and fc.delta == lf.component_dims
    return {"codimension_two": codim, "slice_quivers_affine": affine}


def analyze(problem: ProblemFile, force: bool = False) -> Analysis:
    fp = problem.framed()
    q = fp.framed
    rep: dict = {"schema": SCHEMA, "input": _input_echo(problem)}
    warnings: list[str] = []
    rep["framed"] = {
        "vtilde": _vec(q, fp.vtilde),
        "p": p_value(q, fp.vtilde),
        "pairings": {q.vertices[i]: pair_simple(q, fp.vtilde, i) for i in range(len(q))},
    }
    in_f = is_in_fundamental_region(fp)
    rep["fundamental_region"] = in_f
    table = DecompositionTable(q, fp.vtilde)
    rep["sigma0"] = {"vtilde_in_sigma0": table.in_sigma(fp.vtilde), "feasible": sigma0_feasible(fp)}
    if problem.lam is not None:
        lam_table = DecompositionTable(q, fp.vtilde, framed_weight(fp, problem.weight()))
        rep["sigma0"]["vtilde_in_sigma_lambda"] = lam_table.in_sigma(fp.vtilde)
        rep["sigma0"]["feasible_lambda"] = sigma0_feasible(fp, problem.weight())
    if not in_f:
        bad = [q.vertices[i] for i in q.name_order() if pair_simple(q, fp.vtilde, i) > 0]
        rep["gate"] = f"v-tilde is outside the fundamental region: positive pairing at {', '.join(bad)}"
        rep["verdict"] = "not-applicable"
        if force:
            rep["roots"] = _roots(fp.base, fp.v)
            return Analysis(rep, EXIT_OK, fp)
        return Analysis(rep, EXIT_INPUT, fp)

    sd = canonical_string_decomposition(fp, table)
    if not sd.is_string:
        warnings.append("canonical decomposition does not form a string; factors listed in canonical order")
    rep["decomposition"] = _decomposition(q, sd)
    leaves = enumerate_codim2_leaves_general(fp, sd, table)
    rep["leaves"] = [_leaf(q, lf) for lf in leaves]
    for k, lf in enumerate(leaves):
        warnings.extend(f"leaf {k}: {w}" for w in lf.warnings)
    nw = assemble_namikawa_weyl(leaves)
    rep["namikawa_weyl"] = {"type": nw.label, "order": _order(nw.order)}

    gens = wvw_generators(fp, sd)
    wt = wvw_type(fp, gens)
    rep["wvw"] = {
        "generators": _names(q, gens.all),
        "irr": _names(q, gens.irr),
        "ess": _names(q, gens.ess),
        "type": wt.label,
        "order": _order(wt.order),
    }
    try:
        it = iota(fp, sd, leaves, gens)
    except IotaError as e:
        rep["iota"] = {"error": str(e)}
        rep["verdict"] = "fail"
        rep["warnings"] = warnings
        return Analysis(rep, EXIT_VERDICT, fp, leaves)
    rep["iota"] = {q.vertices[j]: {"leaf": i, "coordinate": a} for j, (i, a) in it.map.items()}

    act = check_intertwining(fp, sd, leaves, gens, it)
    rep["intertwining"] = {"verdict": act.verdict, "checks": act.checks, "counterexample": act.counterexample}
    rels = coxeter_relations(fp, gens, leaves, it)
    rep["relations"] = [
        {
            "pair": [q.vertices[a], q.vertices[b]],
            "expected": _order(r.expected),
            "computed": r.computed if r.computed is not None else "exceeds cap",
            "ok": r.ok,
        }
        for r in rels
        for a, b in [r.pair]
    ]
    img = image_order(fp, gens, leaves, it)
    rep["iota_image_order"] = _order(img)
    rep["structure"] = structural_checks(fp, leaves)
    rep["h2_xreg"] = "unknown"
    rep["warnings"] = warnings
    verdict_ok = act.verdict == "pass" and all(r.ok for r in rels) and all(rep["structure"].values())
    rep["verdict"] = "pass" if verdict_ok else "fail"
    return Analysis(rep, EXIT_OK if verdict_ok else EXIT_VERDICT, fp, leaves)


def _roots(q: Quiver, bound) -> list:
    return [
        {"vector": q.as_dict(r.vec, sparse=False), "class": r.klass.value}
        for r in enumerate_positive_roots(q, bound)
    ]


def roots_report(problem: ProblemFile, bound) -> dict:
    q = problem.quiver()
    order = q.name_order()
    rows = enumerate_positive_roots(q, bound)
    rows = sorted(rows, key=lambda r: (sum(r.vec), tuple(-r.vec[i] for i in order)))
    return {
        "schema": SCHEMA,
        "bound": q.as_dict(bound, sparse=False),
        "count": len(rows),
        "roots": [{"vector": q.as_dict(r.vec), "class": r.klass.value} for r in rows],
    }


# ---------------------------------------------------------------------------
# text rendering


def _fmt_vec(d: dict) -> str:
    if not d:
        return "0"
    # a_x is the simple root at vertex x
    return " + ".join(f"{v}*a_{k}" if v != 1 else f"a_{k}" for k, v in d.items())


def _fmt_parts(parts) -> str:
    return "(" + "; ".join(f"{_fmt_vec(p['vector'])}, {p['mult']}" for p in parts) + ")"


def render_text(rep: dict) -> str:
    lines = []
    inp = rep["input"]
    lines.append(f"quiver: vertices {', '.join(inp['vertices'])}")
    lines.append("  edges: " + (", ".join(f"{a}-{b} x{m}" for a, b, m in inp["edges"]) or "-"))
    fr = rep["framed"]
    lines.append(f"v-tilde: {_fmt_vec(fr['vtilde'])}   p = {fr['p']}")
    lines.append(f"fundamental region: {'yes' if rep['fundamental_region'] else 'no'}")
    lines.append(f"v-tilde in Sigma_0: {'yes' if rep['sigma0']['vtilde_in_sigma0'] else 'no'}")
    if "gate" in rep:
        lines.append(rep["gate"])
        return "\n".join(lines) + "\n"
    lines.append("canonical decomposition:")
    dec = rep["decomposition"]
    for k, f in enumerate(dec["factors"]):
        extra = f"  delta = {_fmt_vec(f['delta'])}, m = {f['multiplicity']}" if "delta" in f else ""
        lines.append(f"  [{k}] {f['kind']}: {_fmt_vec(f['vector'])}{extra}  (frame {f['frame_vertex']})")
    for c in dec["connectors"]:
        lines.append(f"  connector: {', '.join(c) if c else '(empty)'}")
    lines.append(f"codimension-2 leaves: {len(rep['leaves'])}")
    for k, lf in enumerate(rep["leaves"]):
        lines.append(f"  leaf {k} (factor {lf['factor']}, {lf['kind']}): {_fmt_parts(lf['rep_type'])}")
        lines.append(f"    slice {lf['slice_type']}, coordinates {', '.join(_fmt_vec(c) for c in lf['coordinates'])}")
        lines.append(f"    folded Cartan {lf['folded_cartan']}")
    nw = rep["namikawa_weyl"]
    lines.append(f"Namikawa-Weyl group: {nw['type']} (order {nw['order']})")
    w = rep["wvw"]
    lines.append(f"W(v,w): {w['type']} (order {w['order']})")
    lines.append(f"  generators: {', '.join(w['generators']) or '-'}; irr: {', '.join(w['irr']) or '-'}; ess: {', '.join(w['ess']) or '-'}")
    if "error" in rep["iota"]:
        lines.append(f"iota: {rep['iota']['error']}")
    else:
        for j, t in sorted(rep["iota"].items()):
            lines.append(f"  iota(s_{j}) -> leaf {t['leaf']}, coordinate {t['coordinate']}")
        lines.append(f"  order of iota image: {rep['iota_image_order']}")
        it = rep["intertwining"]
        lines.append(f"intertwining: {it['verdict'].upper()} ({it['checks']} checks)")
        bad = [r for r in rep["relations"] if not r["ok"]]
        lines.append(f"relations: {len(rep['relations']) - len(bad)}/{len(rep['relations'])} consistent")
    for wmsg in rep.get("warnings", []):
        lines.append(f"warning: {wmsg}")
    lines.append(f"verdict: {rep['verdict']}")
    return "\n".join(lines) + "\n"
