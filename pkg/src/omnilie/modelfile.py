"""Model files: one self-describing JSON document per input.

Layout::

    {"schema": "omnilie/1",
     "header": {"d": 2, "r": 2, "coefficients": "polynomial"},
     "metadata": {"name": "...", "description": "..."},
     "payload": {"kind": "algebroid", ...}}

Rationals are "p/q" strings (JSON integers are accepted on input) and
polynomials are lists of {"coefficient", "exponent"} terms. One type tree per
payload kind drives both the JSON Schema validation and the typed decoding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import jsonschema

from .algebroids import AnchorAlgebroid, FormAlgebroid, FullAlgebroid, LineAlgebroid, ProjAlgebroid
from .dirac import Connection, DiracPres
from .exact import DimensionError, Poly, Subspace
from .graphs import LambdaHat
from .lie import LieStruct, Rep
from .omni_point import PointDirac, ambient
from .report import SCHEMA, rat_str
from .sections import HomSec, OmniSec, TauSec, is_zero_mat, pvec

KINDS = ("omni-point", "lie", "algebroid", "dirac", "lambda", "deformation", "bialgebroid")
POINT_KINDS = ("omni-point", "lie")


class ModelError(ValueError):
    """Input error; ``category`` is "parse" or "semantic", ``path`` names the field."""

    def __init__(self, category: str, path: str, message: str):
        self.category, self.path, self.message = category, path, message
        super().__init__(f"{category} error at {path or '<document>'}: {message}")


# ---------------------------------------------------------------------------
# type tree


class T:
    def schema(self) -> dict:
        raise NotImplementedError

    def decode(self, value, path: str, d: int):
        return value

    def encode(self, value):
        return value


_RAT_RE = r"^-?[0-9]+(/-?[0-9]+)?$"


class Rat(T):
    def schema(self):
        return {"type": ["string", "integer"], "pattern": _RAT_RE}

    def decode(self, value, path, d):
        if isinstance(value, int):
            return Fraction(value)
        num, _, den = value.partition("/")
        if den and int(den) == 0:
            raise ModelError("parse", path, f"denominator 0 in {value!r}")
        q = Fraction(int(num), int(den) if den else 1)
        if den and (q.numerator, q.denominator) != (int(num), int(den)):
            raise ModelError("semantic", path, f"rational {value!r} is not in lowest terms")
        return q

    def encode(self, value):
        return rat_str(value)


class PolyT(T):
    def schema(self):
        term = {"type": "object", "required": ["coefficient", "exponent"],
                "additionalProperties": False,
                "properties": {"coefficient": Rat().schema(),
                               "exponent": {"type": "array", "items": {"type": "integer", "minimum": 0}}}}
        return {"type": "array", "items": term}

    def decode(self, value, path, d):
        terms = {}
        for i, t in enumerate(value):
            exp = tuple(t["exponent"])
            if len(exp) != d:
                raise ModelError("semantic", f"{path}[{i}].exponent",
                                 f"exponent has length {len(exp)}, expected d = {d}")
            if exp in terms:
                raise ModelError("semantic", f"{path}[{i}].exponent", f"repeated exponent {list(exp)}")
            terms[exp] = Rat().decode(t["coefficient"], f"{path}[{i}].coefficient", d)
        return Poly(d, terms)

    def encode(self, value: Poly):
        return [{"coefficient": rat_str(c), "exponent": list(e)} for e, c in value.sorted_terms()]


class Int(T):
    def __init__(self, minimum: int | None = 0):
        self.minimum = minimum

    def schema(self):
        s = {"type": "integer"}
        if self.minimum is not None:
            s["minimum"] = self.minimum
        return s


class Bool(T):
    def schema(self):
        return {"type": "boolean"}


class Str(T):
    def __init__(self, choices=None):
        self.choices = choices

    def schema(self):
        s = {"type": "string"}
        if self.choices:
            s["enum"] = list(self.choices)
        return s


class List(T):
    def __init__(self, item: T, length: int | None = None):
        self.item, self.length = item, length

    def schema(self):
        s = {"type": "array", "items": self.item.schema()}
        if self.length is not None:
            s["minItems"] = s["maxItems"] = self.length
        return s

    def decode(self, value, path, d):
        return [self.item.decode(v, f"{path}[{i}]", d) for i, v in enumerate(value)]

    def encode(self, value):
        return [self.item.encode(v) for v in value]


class Obj(T):
    def __init__(self, required: dict, optional: dict | None = None):
        self.required, self.optional = required, optional or {}

    def fields(self):
        return {**self.required, **self.optional}

    def schema(self):
        return {"type": "object", "required": sorted(self.required), "additionalProperties": False,
                "properties": {k: t.schema() for k, t in self.fields().items()}}

    def decode(self, value, path, d):
        f = self.fields()
        return {k: f[k].decode(v, f"{path}.{k}", d) for k, v in value.items()}

    def encode(self, value):
        f = self.fields()
        return {k: f[k].encode(v) for k, v in value.items()}


RAT, POLY = Rat(), PolyT()
RVEC, RMAT = List(RAT), List(List(RAT))
PVEC, PMAT = List(POLY), List(List(POLY))
PAIRS = List(Obj({"pair": List(Int(), 2), "value": PVEC}))
LIE = Obj({"n": Int(), "structure": List(RMAT)},
          {"rep": Obj({"type": Str(("adjoint", "trivial", "matrices"))}, {"matrices": List(RMAT)}),
           "subspace": RMAT})
ALGEBROID = Obj({"type": Str(("full", "anchor", "form", "line"))},
                {"structure": PAIRS, "gamma": List(PMAT), "curvature": PAIRS, "fibre": PAIRS,
                 "rho": PMAT, "subspace": RMAT, "lam": PMAT,
                 "generator": Obj({"x": PVEC, "u": PVEC}), "designated": Int(),
                 "connection": List(PMAT)})
OMNISEC = Obj({"x": PVEC, "Phi": PMAT, "u": PVEC, "eta": PMAT})
HOMSEC = Obj({"Phi": PMAT, "y": PMAT})

PAYLOADS = {
    "omni-point": Obj({"kind": Str(), "vectors": List(RVEC)}),
    "lie": Obj({"kind": Str(), "lie": LIE}, {"nijenhuis": List(RMAT)}),
    "algebroid": Obj({"kind": Str(), "algebroid": ALGEBROID}),
    "dirac": Obj({"kind": Str(), "base": ALGEBROID, "lift": List(OMNISEC), "annihilator": List(HOMSEC)}),
    "lambda": Obj({"kind": Str(), "lam": PMAT}, {"beta": PAIRS, "coboundary": Bool()}),
    "deformation": Obj({"kind": Str()}, {"algebroid": ALGEBROID, "omega": PAIRS, "lie": LIE,
                                         "cocycle": List(RMAT), "nijenhuis": List(RMAT)}),
    "bialgebroid": Obj({"kind": Str()}, {"algebroid": ALGEBROID, "dual": ALGEBROID,
                                         "lie": LIE, "dual_lie": LIE}),
}

DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["schema", "header", "payload"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA},
        "header": {"type": "object", "required": ["d", "r", "coefficients"], "additionalProperties": False,
                   "properties": {"d": {"type": "integer", "minimum": 0},
                                  "r": {"type": "integer", "minimum": 1},
                                  "coefficients": {"enum": ["rational", "polynomial"]}}},
        "metadata": {"type": "object", "additionalProperties": False,
                     "properties": {"name": {"type": "string"}, "description": {"type": "string"}}},
        "payload": {"type": "object", "required": ["kind"],
                    "properties": {"kind": {"enum": list(KINDS)}}},
    },
}


def _validate(schema: dict, data, prefix: str):
    v = jsonschema.Draft202012Validator(schema)
    errors = sorted(v.iter_errors(data), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        e = errors[0]
        path = prefix + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in e.absolute_path)
        path = path.lstrip(".")
        raise ModelError("parse", path, e.message)


# ---------------------------------------------------------------------------
# model documents


@dataclass(frozen=True)
class ModelFile:
    d: int
    r: int
    kind: str
    payload: dict
    name: str = ""
    description: str = ""
    version: str = SCHEMA

    @property
    def coefficients(self) -> str:
        return "rational" if self.kind in POINT_KINDS else "polynomial"

    def to_data(self) -> dict:
        meta = {}
        if self.name:
            meta["name"] = self.name
        if self.description:
            meta["description"] = self.description
        doc = {"schema": self.version,
               "header": {"d": self.d, "r": self.r, "coefficients": self.coefficients},
               "payload": PAYLOADS[self.kind].encode({"kind": self.kind, **self.payload})}
        if meta:
            doc["metadata"] = meta
        return doc

    def build(self):
        return build(self)


def serialize_model(m: ModelFile) -> str:
    return json.dumps(m.to_data(), sort_keys=True, indent=2) + "\n"


def parse_model(text: str) -> ModelFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError("parse", f"line {e.lineno} column {e.colno}", e.msg) from None
    return model_from_data(data)


def model_from_data(data) -> ModelFile:
    _validate(DOCUMENT_SCHEMA, data, "")
    header, payload = data["header"], data["payload"]
    kind = payload["kind"]
    _validate(PAYLOADS[kind].schema(), payload, "payload")
    d, r = header["d"], header["r"]
    want = "rational" if kind in POINT_KINDS else "polynomial"
    if header["coefficients"] != want:
        raise ModelError("semantic", "header.coefficients", f"kind {kind!r} uses {want} coefficients")
    if kind in POINT_KINDS and d != 0:
        raise ModelError("semantic", "header.d", f"kind {kind!r} lives over a point (d = 0)")
    decoded = PAYLOADS[kind].decode(payload, "payload", d)
    decoded.pop("kind")
    meta = data.get("metadata", {})
    m = ModelFile(d, r, kind, decoded, meta.get("name", ""), meta.get("description", ""))
    build(m)  # enforce the semantic invariants at load
    return m


def load_model(path: str) -> ModelFile:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


# ---------------------------------------------------------------------------
# building library objects


def _semantic(path: str):
    """Re-raise construction errors as semantic errors naming ``path``."""

    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, tp, exc, tb):
            if exc is not None and isinstance(exc, (ValueError, TypeError, IndexError)) \
                    and not isinstance(exc, ModelError):
                raise ModelError("semantic", path, str(exc)) from None
            return False

    return _Ctx()


def _check_shape(path: str, rows, nrows: int, ncols: int | None = None):
    if len(rows) != nrows:
        raise ModelError("semantic", path, f"expected {nrows} rows, got {len(rows)}")
    if ncols is not None:
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ModelError("semantic", f"{path}[{i}]", f"expected {ncols} entries, got {len(row)}")


def _pairs(entries, path: str, n: int, width: int) -> dict:
    out = {}
    for k, e in enumerate(entries):
        i, j = e["pair"]
        if not (i < n and j < n):
            raise ModelError("semantic", f"{path}[{k}].pair", f"index out of range (frame size {n})")
        if len(e["value"]) != width:
            raise ModelError("semantic", f"{path}[{k}].value", f"expected {width} entries")
        if (i, j) in out or (j, i) in out:
            raise ModelError("semantic", f"{path}[{k}].pair", f"skewness: pair {[i, j]} given twice")
        out[(i, j)] = e["value"]
    return out


def build_lie(data: dict, r: int, path: str):
    n = data["n"]
    c = data["structure"]
    _check_shape(f"{path}.structure", c, n)
    for i, row in enumerate(c):
        _check_shape(f"{path}.structure[{i}]", row, n, n)
    with _semantic(f"{path}.structure"):
        lie = LieStruct(n, c)
    rep_data = data.get("rep", {"type": "trivial"})
    if rep_data["type"] == "adjoint":
        if r != n:
            raise ModelError("semantic", f"{path}.rep", f"adjoint representation needs r = n = {n}")
        rep = lie.adjoint_rep()
    elif rep_data["type"] == "trivial":
        rep = lie.trivial_rep(r)
    else:
        mats = rep_data.get("matrices")
        if mats is None:
            raise ModelError("semantic", f"{path}.rep.matrices", "missing representation matrices")
        _check_shape(f"{path}.rep.matrices", mats, n)
        for i, m in enumerate(mats):
            _check_shape(f"{path}.rep.matrices[{i}]", m, r, r)
        rep = Rep(r, mats)
    W = None
    if "subspace" in data:
        vecs = data["subspace"]
        _check_shape(f"{path}.subspace", vecs, n, r)
        W = Subspace(r, vecs)
        if W.dim != n or [list(v) for v in W.basis] != [list(v) for v in vecs]:
            raise ModelError("semantic", f"{path}.subspace",
                             "subspace basis must be independent and in reduced row echelon form")
    elif n == r:
        W = Subspace.full(r)
    return lie, rep, W


def build_algebroid(data: dict, d: int, r: int, path: str):
    t = data["type"]
    allowed = {"full": {"structure", "gamma", "curvature", "fibre"},
               "anchor": {"rho", "subspace", "structure"},
               "form": {"lam", "structure"},
               "line": {"generator", "designated"}}[t] | {"type", "connection"}
    extra = sorted(set(data) - allowed)
    if extra:
        raise ModelError("semantic", f"{path}.{extra[0]}", f"field not used by a {t} algebroid")
    with _semantic(path):
        if t == "full":
            n = d + r
            if "structure" in data:
                if {"gamma", "curvature", "fibre"} & set(data):
                    raise ModelError("semantic", path, "give either structure or gamma/curvature/fibre")
                A = FullAlgebroid(d, r, structure=_pairs(data["structure"], f"{path}.structure", n, n))
            else:
                gamma = data.get("gamma")
                if gamma is not None:
                    _check_shape(f"{path}.gamma", gamma, d)
                    for a, g in enumerate(gamma):
                        _check_shape(f"{path}.gamma[{a}]", g, r, r)
                curv = _pairs(data.get("curvature", []), f"{path}.curvature", d, r)
                fib = _pairs(data.get("fibre", []), f"{path}.fibre", r, r)
                A = FullAlgebroid(d, r, gamma=gamma, curvature=curv, fibre=fib)
        elif t == "anchor":
            if "rho" not in data:
                raise ModelError("semantic", f"{path}.rho", "missing anchor matrix")
            sub = data.get("subspace")
            if sub is not None:
                for i, v in enumerate(sub):
                    if len(v) != r:
                        raise ModelError("semantic", f"{path}.subspace[{i}]", f"expected {r} entries")
            m = Subspace(r, sub).dim if sub is not None else r
            _check_shape(f"{path}.rho", data["rho"], d, m)
            A = AnchorAlgebroid(d, r, data["rho"], _pairs(data.get("structure", []), f"{path}.structure", m, m), sub)
        elif t == "form":
            if "lam" not in data:
                raise ModelError("semantic", f"{path}.lam", "missing lambda")
            _check_shape(f"{path}.lam", data["lam"], r, d)
            A = FormAlgebroid(d, r, data["lam"], _pairs(data.get("structure", []), f"{path}.structure", d, d))
        else:
            if "generator" not in data or "designated" not in data:
                raise ModelError("semantic", path, "a line algebroid needs generator and designated")
            g = data["generator"]
            if len(g["x"]) != d or len(g["u"]) != r:
                raise ModelError("semantic", f"{path}.generator", f"expected {d} + {r} components")
            A = LineAlgebroid(d, r, TauSec.make(d, g["x"], g["u"]), data["designated"])
    conn = None
    if "connection" in data:
        theta = data["connection"]
        _check_shape(f"{path}.connection", theta, d)
        for a, m in enumerate(theta):
            _check_shape(f"{path}.connection[{a}]", m, r, r)
        conn = Connection.make(d, theta)
    return A, conn


def build(m: ModelFile):
    d, r, p = m.d, m.r, m.payload
    if m.kind == "omni-point":
        n = ambient(r)
        for i, v in enumerate(p["vectors"]):
            if len(v) != n:
                raise ModelError("semantic", f"payload.vectors[{i}]", f"expected {n} = r*r + r entries")
        return PointDirac(r, Subspace(n, p["vectors"]))
    if m.kind == "lie":
        lie, rep, W = build_lie(p["lie"], r, "payload.lie")
        nij = _nijenhuis(p.get("nijenhuis", []), lie.n, "payload.nijenhuis")
        return {"lie": lie, "rep": rep, "subspace": W, "nijenhuis": nij}
    if m.kind == "algebroid":
        A, conn = build_algebroid(p["algebroid"], d, r, "payload.algebroid")
        return {"algebroid": A, "connection": conn}
    if m.kind == "dirac":
        A, _ = build_algebroid(p["base"], d, r, "payload.base")
        lift = []
        for i, s in enumerate(p["lift"]):
            with _semantic(f"payload.lift[{i}]"):
                X = OmniSec.make(d, s["x"], s["Phi"], s["u"], s["eta"])
                if X.shape != (d, r):
                    raise DimensionError(f"section has shape {X.shape}, expected {(d, r)}")
            lift.append(X)
        if len(lift) != A.n:
            raise ModelError("semantic", "payload.lift", f"expected one lift per frame element ({A.n})")
        ann = []
        for i, s in enumerate(p["annihilator"]):
            with _semantic(f"payload.annihilator[{i}]"):
                h = HomSec.make(d, s["Phi"], s["y"])
                if len(h.Phi) != r or any(len(row) != r for row in h.Phi):
                    raise DimensionError(f"Phi must be {r}x{r}")
            ann.append(h)
        return DiracPres(A, lift, ann, name=m.name, origin="model")
    if m.kind == "lambda":
        _check_shape("payload.lam", p["lam"], r, d)
        if p.get("coboundary"):
            if "beta" in p:
                raise ModelError("semantic", "payload.beta", "beta is implied when coboundary is true")
            with _semantic("payload.lam"):
                return LambdaHat.coboundary(d, r, p["lam"])
        with _semantic("payload.beta"):
            return LambdaHat.make(d, r, p["lam"], _pairs(p.get("beta", []), "payload.beta", d, r))
    if m.kind == "deformation":
        if "algebroid" in p:
            if {"lie", "cocycle", "nijenhuis"} & set(p):
                raise ModelError("semantic", "payload", "mix of bundle and pointwise deformation data")
            A, _ = build_algebroid(p["algebroid"], d, r, "payload.algebroid")
            omega = _pairs(p.get("omega", []), "payload.omega", A.n, r)
            with _semantic("payload.omega"):
                for (i, j), v in omega.items():
                    if i == j and any(q.terms for q in v):
                        raise ValueError("skewness: omega(a, a) must vanish")
            return {"algebroid": A, "omega": omega}
        if "lie" not in p:
            raise ModelError("semantic", "payload", "deformation needs an algebroid or a lie algebra")
        if "omega" in p:
            raise ModelError("semantic", "payload.omega", "use cocycle for a pointwise deformation")
        lie, rep, W = build_lie(p["lie"], r, "payload.lie")
        out = {"lie": lie, "cocycle": None, "nijenhuis": _nijenhuis(p.get("nijenhuis", []), lie.n,
                                                                    "payload.nijenhuis")}
        if "cocycle" in p:
            _check_shape("payload.cocycle", p["cocycle"], lie.n)
            for i, row in enumerate(p["cocycle"]):
                _check_shape(f"payload.cocycle[{i}]", row, lie.n, lie.n)
            with _semantic("payload.cocycle"):
                out["cocycle"] = LieStruct(lie.n, p["cocycle"])
        return out
    if m.kind == "bialgebroid":
        if "algebroid" in p or "dual" in p:
            if "algebroid" not in p or "dual" not in p:
                raise ModelError("semantic", "payload", "bialgebroid needs algebroid and dual")
            E, _ = build_algebroid(p["algebroid"], d, r, "payload.algebroid")
            Es, _ = build_algebroid(p["dual"], d, r, "payload.dual")
            for key, A in (("algebroid", E), ("dual", Es)):
                if not isinstance(A, AnchorAlgebroid) or A.m != r:
                    raise ModelError("semantic", f"payload.{key}", "must be an anchor algebroid on all of E")
            return {"algebroid": E, "dual": Es}
        if "lie" not in p or "dual_lie" not in p:
            raise ModelError("semantic", "payload", "bialgebra needs lie and dual_lie")
        g, _, _ = build_lie(p["lie"], r, "payload.lie")
        gs, _, _ = build_lie(p["dual_lie"], r, "payload.dual_lie")
        if g.n != gs.n:
            raise ModelError("semantic", "payload.dual_lie", "dual must have the same dimension")
        return {"lie": g, "dual_lie": gs}
    raise ModelError("semantic", "payload.kind", f"unknown kind {m.kind!r}")


def _nijenhuis(mats, n: int, path: str) -> list:
    for i, m in enumerate(mats):
        _check_shape(f"{path}[{i}]", m, n, n)
    return [[list(row) for row in m] for m in mats]


# ---------------------------------------------------------------------------
# encoding library objects


def _rats(v):
    return [Fraction(x) for x in v]


def _rmat(m):
    return [_rats(row) for row in m]


def _pmat(m):
    return [list(row) for row in m]


def _pair_list(struct: dict) -> list:
    return [{"pair": [i, j], "value": list(v)} for (i, j), v in sorted(struct.items())
            if any(p.terms for p in v)]


def lie_data(lie: LieStruct, rep="trivial", subspace: Subspace | None = None) -> dict:
    out = {"n": lie.n, "structure": [[_rats(v) for v in row] for row in lie.c]}
    if isinstance(rep, Rep):
        out["rep"] = {"type": "matrices", "matrices": [_rmat(m) for m in rep.mats]}
    else:
        out["rep"] = {"type": rep}
    if subspace is not None and subspace.dim != subspace.ambient_dim:
        out["subspace"] = [_rats(v) for v in subspace.basis]
    return out


def algebroid_data(A: ProjAlgebroid, conn: Connection | None = None) -> dict:
    out = {"type": A.kind}
    if A.kind == "anchor":
        out["rho"] = _pmat(A.rho_matrix)
        if A.F.dim < A.r:
            out["subspace"] = [_rats(v) for v in A.F.basis]
    elif A.kind == "form":
        out["lam"] = _pmat(A.lam)
    elif A.kind == "line":
        g = A.frame[0]
        out["generator"] = {"x": list(g.x), "u": list(g.u)}
        out["designated"] = A.designated
    if A.kind != "line" and A.structure:
        out["structure"] = _pair_list(A.structure)
    if conn is not None and not all(is_zero_mat(t) for t in conn.theta):
        out["connection"] = [_pmat(t) for t in conn.theta]
    return out


def model_from_point(L: PointDirac, name: str = "", description: str = "") -> ModelFile:
    return ModelFile(0, L.r, "omni-point", {"vectors": [_rats(v) for v in L.space.basis]}, name, description)


def model_from_lie(lie: LieStruct, r: int, rep="trivial", subspace: Subspace | None = None,
                   nijenhuis=(), name: str = "", description: str = "") -> ModelFile:
    p = {"lie": lie_data(lie, rep, subspace)}
    if nijenhuis:
        p["nijenhuis"] = [_rmat(N) for N in nijenhuis]
    return ModelFile(0, r, "lie", p, name, description)


def model_from_algebroid(A: ProjAlgebroid, conn: Connection | None = None, name: str = "",
                         description: str = "") -> ModelFile:
    return ModelFile(A.d, A.r, "algebroid", {"algebroid": algebroid_data(A, conn)}, name, description)


def model_from_dirac(L: DiracPres, name: str = "", description: str = "") -> ModelFile:
    lift = [{"x": list(X.der.x), "Phi": _pmat(X.der.Phi), "u": list(X.jet.u), "eta": _pmat(X.jet.eta)}
            for X in L.lift_frame]
    ann = [{"Phi": _pmat(h.Phi), "y": _pmat(h.y)} for h in L.a0_frame]
    p = {"base": algebroid_data(L.base), "lift": lift, "annihilator": ann}
    return ModelFile(L.d, L.r, "dirac", p, name or L.name, description)


def model_from_lambda(lh: LambdaHat, coboundary: bool = False, name: str = "",
                      description: str = "") -> ModelFile:
    p = {"lam": _pmat(lh.lam)}
    if coboundary:
        p["coboundary"] = True
    elif lh.beta:
        p["beta"] = _pair_list(lh.beta)
    return ModelFile(lh.d, lh.r, "lambda", p, name, description)


def model_from_deformation(A: ProjAlgebroid, omega: dict, name: str = "", description: str = "") -> ModelFile:
    p = {"algebroid": algebroid_data(A),
         "omega": _pair_list({k: pvec(A.d, v) for k, v in omega.items()})}
    return ModelFile(A.d, A.r, "deformation", p, name, description)


def model_from_lie_deformation(lie: LieStruct, r: int, cocycle: LieStruct | None = None, nijenhuis=(),
                               name: str = "", description: str = "") -> ModelFile:
    p = {"lie": lie_data(lie)}
    if cocycle is not None:
        p["cocycle"] = [[_rats(v) for v in row] for row in cocycle.c]
    if nijenhuis:
        p["nijenhuis"] = [_rmat(N) for N in nijenhuis]
    return ModelFile(0, r, "deformation", p, name, description)


def model_from_bialgebroid(E: AnchorAlgebroid, Estar: AnchorAlgebroid, name: str = "",
                           description: str = "") -> ModelFile:
    p = {"algebroid": algebroid_data(E), "dual": algebroid_data(Estar)}
    return ModelFile(E.d, E.r, "bialgebroid", p, name, description)


def model_from_bialgebra(g: LieStruct, gstar: LieStruct, name: str = "", description: str = "") -> ModelFile:
    p = {"lie": lie_data(g), "dual_lie": lie_data(gstar)}
    return ModelFile(0, g.n, "bialgebroid", p, name, description)
