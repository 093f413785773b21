"""JSON encodings of algebras, bimodules and intertwiners.

Rationals are written as ``"p/q"`` strings (``"p"`` when integral) and read
back bit-exactly.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import Algebra, WedderburnBlock, WedderburnCertificate, _table_from_dense
from .bimodule import Bimodule, Intertwiner
from .exactla import Mat, format_q, q

__all__ = [
    "encode_vec",
    "decode_vec",
    "encode_mat",
    "decode_mat",
    "algebra_to_json",
    "algebra_from_json",
    "bimodule_to_json",
    "bimodule_from_json",
    "intertwiner_to_json",
    "intertwiner_from_json",
]


def encode_vec(v: Sequence) -> list[str]:
    return [format_q(x) for x in v]


def decode_vec(v: Sequence[str]) -> tuple:
    return tuple(q(x) for x in v)


def encode_mat(m: Mat) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [format_q(x) for x in m.entries]}


def decode_mat(d: dict) -> Mat:
    return Mat.from_entries(d["rows"], d["cols"], [q(x) for x in d["entries"]])


def algebra_to_json(A: Algebra) -> dict:
    out = {
        "label": A.label,
        "dim": A.dim,
        "unit": encode_vec(A.unit),
        "mult": [[encode_vec(v) for v in row] for row in A.mult_dense()],
        "generators": [encode_vec(g) for g in A.generators],
    }
    cert = A.certificate
    if cert is not None:
        out["certificate"] = [
            {"idempotent": encode_vec(b.idempotent), "dim": b.dim, "action": [encode_mat(x) for x in b.action]}
            for b in cert.blocks
        ]
    return out


def algebra_from_json(d: dict) -> Algebra:
    from .algebra import InvalidAlgebra, validate

    n = d["dim"]
    mult = [[[q(x) for x in v] for v in row] for row in d["mult"]]
    if len(mult) != n or any(len(r) != n or any(len(v) != n for v in r) for r in mult):
        raise InvalidAlgebra("mult must be dim x dim x dim")
    cert = None
    if d.get("certificate") is not None:
        cert = WedderburnCertificate(tuple(
            WedderburnBlock(decode_vec(b["idempotent"]), b["dim"], tuple(decode_mat(m) for m in b["action"]))
            for b in d["certificate"]))
    gens = d.get("generators")
    A = Algebra(n, _table_from_dense(n, mult), decode_vec(d["unit"]), cert, d.get("label", ""),
                None if gens is None else [decode_vec(g) for g in gens])
    defects = validate(A)
    if defects:
        raise InvalidAlgebra(f"{A.label or 'algebra'}: {len(defects)} defects, first {defects[:3]}")
    return A


def bimodule_to_json(M: Bimodule, algebra_index: dict[Algebra, int]) -> dict:
    return {
        "label": M.label,
        "left": algebra_index[M.left_alg],
        "right": algebra_index[M.right_alg],
        "dim": M.dim,
        "left_act": [encode_mat(x) for x in M.left_act],
        "right_act": [encode_mat(x) for x in M.right_act],
    }


def bimodule_from_json(d: dict, algebras: Sequence[Algebra]) -> Bimodule:
    M = Bimodule(algebras[d["left"]], algebras[d["right"]], d["dim"],
                 [decode_mat(x) for x in d["left_act"]], [decode_mat(x) for x in d["right_act"]],
                 label=d.get("label", ""))
    bad = M.defects()
    if bad:
        raise ValueError(f"bimodule {M.label}: {bad[0]}")
    return M


def intertwiner_to_json(f: Intertwiner, modules: dict[Bimodule, int]) -> dict:
    return {"source": modules[f.source], "target": modules[f.target], "mat": encode_mat(f.mat)}


def intertwiner_from_json(d: dict, modules: Sequence[Bimodule]) -> Intertwiner:
    return Intertwiner(modules[d["source"]], modules[d["target"]], decode_mat(d["mat"])).checked()
