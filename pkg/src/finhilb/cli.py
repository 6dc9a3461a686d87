"""Command-line front end: generation, verification, search, and report
emission with stable machine-readable output."""

import argparse
import json
import os
import sys

import numpy as np

from . import clifford, combinat, designs, gf, mub, sic, weyl, wigner

FORMAT_VERSION = 1
KINDS = ("mubset", "basisfamily", "sic", "wignertable", "field")


class KindMismatch(ValueError):
    """A loaded document carries the wrong `kind` tag."""


# -- complex <-> JSON -------------------------------------------------------

def _c2j(z):
    return [float(np.real(z)), float(np.imag(z))]


def _vec2j(v):
    return [_c2j(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def _mat2j(m):
    return [[_c2j(z) for z in row] for row in np.asarray(m, dtype=complex)]


def _j2vec(data):
    return np.array([complex(a, b) for a, b in data], dtype=complex)


def _j2mat(data):
    return np.array([[complex(a, b) for a, b in row] for row in data],
                    dtype=complex)


# -- persistence ------------------------------------------------------------

def persist(doc: dict, path: str) -> None:
    if doc.get("kind") not in KINDS:
        raise ValueError("unknown document kind: %r" % doc.get("kind"))
    text = json.dumps(doc, sort_keys=True, indent=1)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def _read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _check_version(doc):
    if doc.get("version") != FORMAT_VERSION:
        print("warning: format version %r differs from %d, loading best-effort"
              % (doc.get("version"), FORMAT_VERSION), file=sys.stderr)


def load(path: str, kind: str) -> dict:
    doc = _read_json(path)
    got = doc.get("kind") if isinstance(doc, dict) else None
    if got != kind:
        raise KindMismatch("expected kind '%s', got '%s'" % (kind, got))
    _check_version(doc)
    return doc


def _load_family(path):
    """Rows of unit vectors from a basisfamily, mubset, or sic document."""
    doc = _read_json(path)
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "basisfamily":
        _check_version(doc)
        return np.array([_j2vec(v) for v in doc["vectors"]])
    if kind == "mubset":
        _check_version(doc)
        return np.hstack([_j2mat(b) for b in doc["bases"]]).T
    if kind == "sic":
        _check_version(doc)
        return sic.sic_orbit(_j2vec(doc["fiducial"]))
    raise KindMismatch(
        "expected kind 'basisfamily', 'mubset' or 'sic', got '%s'" % kind)


# -- run reports -------------------------------------------------------------

class Report:
    def __init__(self, command, parameters, seed=None):
        self.command = command
        self.parameters = parameters
        self.seed = seed
        self.checks = []
        self.artifacts = []
        self.result = None

    def check(self, name, value, threshold, mode="le"):
        value = float(value)
        threshold = float(threshold)
        if mode == "le":
            ok = value <= threshold
        elif mode == "ge":
            ok = value >= threshold
        else:
            ok = value == threshold
        self.checks.append({"name": name, "value": value,
                            "threshold": threshold, "pass": bool(ok)})
        return ok

    @property
    def passed(self):
        return all(c["pass"] for c in self.checks)

    def as_dict(self):
        out = {"command": self.command, "parameters": self.parameters,
               "checks": self.checks, "artifacts": self.artifacts}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.result is not None:
            out["result"] = self.result
        return out

    def emit(self, as_json, lines=None):
        if as_json:
            print(json.dumps(self.as_dict(), sort_keys=True))
            return
        for line in lines or ():
            print(line)
        for c in self.checks:
            print("%-30s value=%-14.6g threshold=%-12.6g %s"
                  % (c["name"], c["value"], c["threshold"],
                     "PASS" if c["pass"] else "FAIL"))
        for path in self.artifacts:
            print("wrote %s" % path)

    def exit_code(self):
        return 0 if self.passed else 1


def _threads(args):
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("HILBERT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError("HILBERT_THREADS is not an integer: %r" % env)
    return max(1, os.cpu_count() or 1)


# -- field -------------------------------------------------------------------

def _poly_str(x):
    terms = []
    for i in range(len(x.coeffs) - 1, -1, -1):
        c = x.coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            var = "x" if i == 1 else "x^%d" % i
            terms.append(var if c == 1 else "%d%s" % (c, var))
    return " + ".join(terms) if terms else "0"


def cmd_field_table(args):
    spec = gf.field_make(args.p, args.k)
    rows = []
    for x in gf.elements(spec):
        rows.append({"index": x.index, "poly": _poly_str(x),
                     "trace": gf.field_trace(x),
                     "trace2": gf.field_trace(x * x),
                     "order": gf.multiplicative_order(x) if x else None})
    rep = Report("field table", {"p": args.p, "k": args.k})
    rep.check("rows", len(rows), spec.order, mode="eq")
    doc = {"kind": "field", "version": FORMAT_VERSION, "p": args.p,
           "k": args.k, "rows": rows}
    if args.out:
        persist(doc, args.out)
        rep.artifacts.append(args.out)
    rep.result = doc
    lines = ["%-6s %-14s %-5s %-6s %s" % ("index", "element", "tr x",
                                          "tr x2", "order")]
    for r in rows:
        lines.append("%-6d %-14s %-5d %-6d %s"
                     % (r["index"], r["poly"], r["trace"], r["trace2"],
                        "-" if r["order"] is None else r["order"]))
    rep.emit(args.json, lines)
    return rep.exit_code()


# -- weyl --------------------------------------------------------------------

def cmd_weyl_check(args):
    rep = Report("weyl check", {"n": args.n, "tol": args.tol})
    rep.check("orthogonality", weyl.orthogonality_max_residual(args.n), args.tol)
    rep.check("group_law", weyl.group_law_max_residual(args.n), args.tol)
    rep.emit(args.json)
    return rep.exit_code()


def cmd_weyl_expand(args):
    mat = _j2mat(_read_json(args.matrix))
    coef = weyl.expand_operator(mat)
    residual = float(np.max(np.abs(weyl.reconstruct_operator(coef) - mat)))
    rep = Report("weyl expand", {"matrix": args.matrix, "tol": args.tol})
    rep.check("reconstruction", residual, args.tol)
    rep.result = {"coefficients": _mat2j(coef)}
    n = coef.shape[0]
    lines = ["r  s  coefficient"]
    for r in range(n):
        for s in range(n):
            lines.append("%d  %d  %.12g %+.12gj"
                         % (r, s, coef[r, s].real, coef[r, s].imag))
    rep.emit(args.json, lines)
    return rep.exit_code()


# -- combinatorics -----------------------------------------------------------

def cmd_latin_gen(args):
    square = combinat.latin_from_group(args.n)
    rep = Report("latin gen", {"n": args.n, "count": bool(args.count)})
    rep.check("is_latin", 1.0 if combinat.is_latin(square) else 0.0, 1.0,
              mode="eq")
    result = {"square": square.tolist()}
    lines = [" ".join(str(v) for v in row) for row in square]
    if args.count:
        reduced = combinat.count_reduced_latin(args.n)
        result["reduced_count"] = reduced
        lines.append("reduced squares of order %d: %d" % (args.n, reduced))
    rep.result = result
    rep.emit(args.json, lines)
    return rep.exit_code()


def cmd_hadamard_fourier(args):
    mat = combinat.fourier_matrix(args.n)
    rep = Report("hadamard fourier", {"n": args.n})
    rep.check("is_hadamard",
              1.0 if combinat.is_complex_hadamard(mat) else 0.0, 1.0,
              mode="eq")
    if args.out:
        persist({"kind": "basisfamily", "version": FORMAT_VERSION,
                 "n": args.n, "vectors": [_vec2j(col) for col in mat.T],
                 "metadata": {"label": "fourier"}}, args.out)
        rep.artifacts.append(args.out)
    rep.result = {"matrix": _mat2j(mat)}
    lines = []
    for row in mat:
        lines.append("  ".join("%+.6f%+.6fj" % (z.real, z.imag) for z in row))
    rep.emit(args.json, lines)
    return rep.exit_code()


def cmd_werner(args):
    latin = combinat.latin_from_group(args.n)
    had = combinat.fourier_matrix(args.n)
    vecs = combinat.werner_basis(latin, had)
    gram_dev = float(np.max(np.abs(vecs @ vecs.conj().T
                                   - np.eye(args.n * args.n))))
    red_dev = 0.0
    for v in vecs:
        for rho in combinat.reduced_density_matrices(v, args.n):
            red_dev = max(red_dev, float(np.max(np.abs(
                rho - np.eye(args.n) / args.n))))
    rep = Report("werner", {"n": args.n, "tol": args.tol})
    rep.check("gram_identity", gram_dev, args.tol)
    rep.check("reduced_states", red_dev, args.tol)
    if args.out:
        persist({"kind": "basisfamily", "version": FORMAT_VERSION,
                 "n": args.n * args.n,
                 "vectors": [_vec2j(v) for v in vecs],
                 "metadata": {"label": "werner", "latin": latin.tolist(),
                              "hadamard": _mat2j(had)}}, args.out)
        rep.artifacts.append(args.out)
    rep.emit(args.json)
    return rep.exit_code()


# -- mub ---------------------------------------------------------------------

def cmd_mub_gen(args):
    if args.k == 1:
        bases = mub.qubit_mubs() if args.p == 2 else mub.ivanovic_mubs(args.p)
    else:
        bases = mub.subgroup_eigenbases(args.p, args.k, seed=args.seed)
    n = bases[0].shape[0]
    report = mub.unbiasedness_check(bases, tol=args.tol)
    rep = Report("mub gen", {"p": args.p, "k": args.k, "tol": args.tol},
                 seed=args.seed)
    rep.check("bases", report["bases"], n + 1, mode="eq")
    rep.check("unbiasedness", report["max_deviation"], args.tol)
    if args.out:
        persist({"kind": "mubset", "version": FORMAT_VERSION, "p": args.p,
                 "k": args.k, "n": n,
                 "bases": [_mat2j(b) for b in bases]}, args.out)
        rep.artifacts.append(args.out)
    rep.emit(args.json)
    return rep.exit_code()


def cmd_mub_verify(args):
    doc = load(args.file, "mubset")
    bases = [_j2mat(b) for b in doc["bases"]]
    n = bases[0].shape[0]
    eye = np.eye(n)
    orth = max(float(np.max(np.abs(b.conj().T @ b - eye))) for b in bases)
    unb = 0.0
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            overlap = np.abs(bases[i].conj().T @ bases[j]) ** 2
            unb = max(unb, float(np.max(np.abs(overlap - 1.0 / n))))
    rep = Report("mub verify", {"file": args.file, "tol": args.tol})
    rep.check("orthonormality", orth, args.tol)
    rep.check("unbiasedness", unb, args.tol)
    rep.emit(args.json)
    return rep.exit_code()


def cmd_mub_mermin(args):
    land = mub.mermin_landscape(seed=args.seed)
    counts = [len([p for p in fl if p <= 6]) for fl in land["flowers"]]
    rep = Report("mub mermin", {}, seed=args.seed)
    rep.check("petals", len(land["petals"]), 15, mode="eq")
    rep.check("flowers", len(land["flowers"]), 6, mode="eq")
    rep.check("mermin_petals_min", min(counts), 2, mode="eq")
    rep.check("mermin_petals_max", max(counts), 2, mode="eq")
    rep.check("stabilizer_states", len(land["stabilizer_states"]),
              mub.stabilizer_count(2, 2), mode="eq")
    lines = ["flower %d: petals %s" % (i + 1, " ".join(map(str, fl)))
             for i, fl in enumerate(land["flowers"])]
    rep.emit(args.json, lines)
    return rep.exit_code()


def cmd_mub_search6(args):
    out = mub.search_unbiased6(restarts=args.restarts, seed=args.seed,
                               threads=_threads(args), tol=args.tol)
    rep = Report("mub search6",
                 {"restarts": args.restarts, "tol": args.tol},
                 seed=args.seed)
    rep.check("vectors_found", out["count"], 1, mode="ge")
    rep.check("min_value", out["min_value"], args.tol)
    rep.result = {"count": out["count"],
                  "vectors": [_vec2j(v) for v in out["vectors"]]}
    rep.emit(args.json)
    return rep.exit_code()


# -- wigner -------------------------------------------------------------------

def cmd_wigner_table(args):
    psi = _j2vec(_read_json(args.state))
    if psi.size != args.n:
        raise ValueError("state dimension %d does not match --n %d"
                         % (psi.size, args.n))
    if abs(np.linalg.norm(psi) - 1.0) > 1e-8:
        raise ValueError("state is not a unit vector")
    pps = wigner.phase_point_set(args.n)
    rho = np.outer(psi, psi.conj())
    table = wigner.wigner_function(rho, pps)
    rep = Report("wigner table", {"n": args.n, "state": args.state,
                                  "tol": args.tol})
    rep.check("total", abs(float(table.sum()) - 1.0), args.tol)
    rep.check("roundtrip", float(np.max(np.abs(
        wigner.reconstruct_state(table, pps) - rho))), args.tol)
    if args.out:
        if args.out.endswith(".json"):
            persist({"kind": "wignertable", "version": FORMAT_VERSION,
                     "n": args.n, "state": _vec2j(psi),
                     "wigner": [[float(x) for x in row] for row in table]},
                    args.out)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                for row in table:
                    fh.write(",".join("%.17g" % x for x in row) + "\n")
        rep.artifacts.append(args.out)
    rep.result = {"wigner": [[float(x) for x in row] for row in table]}
    lines = ["  ".join("%+.6f" % x for x in row) for row in table]
    rep.emit(args.json, lines)
    return rep.exit_code()


def cmd_wigner_check(args):
    n = args.n
    pps = wigner.phase_point_set(n)
    parity = pps[0, 0]
    four = combinat.fourier_matrix(n)
    rep = Report("wigner check", {"n": n, "tol": args.tol}, seed=args.seed)
    rep.check("parity_square",
              float(np.max(np.abs(parity @ parity - np.eye(n)))), args.tol)
    rep.check("fourier_square",
              float(np.max(np.abs(four @ four - parity))), args.tol)
    gram = np.einsum("abij,cdji->abcd", pps, pps) / n
    target = np.zeros((n, n, n, n))
    for a in range(n):
        for b in range(n):
            target[a, b, a, b] = 1.0
    rep.check("orthogonality", float(np.max(np.abs(gram - target))), args.tol)
    rng = np.random.default_rng(args.seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = z @ z.conj().T
    rho = rho / np.trace(rho)
    wtab = wigner.wigner_function(rho, pps)
    rep.check("roundtrip", float(np.max(np.abs(
        wigner.reconstruct_state(wtab, pps) - rho))), args.tol)
    line_map = wigner.mub_line_map(pps)
    rep.check("line_map", max(entry["max_residual"] for entry in line_map),
              args.tol)
    if n == 3:
        gs = clifford.sl2_enumerate(n)
    else:
        all_g = clifford.sl2_enumerate(n)
        gs = [all_g[i] for i in rng.choice(len(all_g), size=50, replace=False)]
    rep.check("covariance",
              max(wigner.clifford_covariance_check(pps, g) for g in gs),
              args.tol)
    rep.emit(args.json)
    return rep.exit_code()


# -- clifford ------------------------------------------------------------------

def cmd_clifford_check(args):
    p = args.p
    group = clifford.sl2_enumerate(p)
    rep = Report("clifford check", {"p": p, "tol": args.tol}, seed=args.seed)
    rep.check("sl2_order", len(group), p * (p * p - 1), mode="eq")
    if p == 3:
        sample = group
    else:
        rng = np.random.default_rng(args.seed)
        sample = [group[i]
                  for i in rng.choice(len(group), size=100, replace=False)]
    rep.check("normalizer",
              max(clifford.normalizer_residual(g, p) for g in sample),
              args.tol)
    parity_dev = float(np.max(np.abs(
        clifford.metaplectic(-np.eye(2, dtype=int), p)
        - wigner.parity_operator(p))))
    rep.check("parity", parity_dev, args.tol)
    rep.emit(args.json)
    return rep.exit_code()


def cmd_clifford_zauner(args):
    doc = _read_json(args.fiducial)
    if isinstance(doc, dict):
        if doc.get("kind") != "sic":
            raise KindMismatch("expected kind 'sic', got '%s'" % doc.get("kind"))
        _check_version(doc)
        psi = _j2vec(doc["fiducial"])
    else:
        psi = _j2vec(doc)
    scan = clifford.zauner_scan(psi, args.p)
    rep = Report("clifford zauner", {"p": args.p, "fiducial": args.fiducial,
                                     "tol": args.tol})
    rep.check("zauner_residual", scan["residual"], args.tol)
    rep.result = {"g": np.asarray(scan["g"]).tolist(),
                  "b": list(scan["b"])}
    rep.emit(args.json)
    return rep.exit_code()


# -- designs -------------------------------------------------------------------

def cmd_design_test(args):
    vectors = _load_family(args.family)
    out = designs.design_test(vectors, args.t, tol=args.tol)
    rep = Report("design test", {"family": args.family, "t": args.t,
                                 "tol": args.tol})
    rep.check("moment_deviation", abs(out["value"] - out["target"]), args.tol)
    rep.result = {"value": out["value"], "target": out["target"],
                  "isDesign": out["isDesign"]}
    rep.emit(args.json)
    return rep.exit_code()


def cmd_design_welch(args):
    vectors = _load_family(args.family)
    out = designs.welch_bound(vectors, args.t)
    rep = Report("design welch", {"family": args.family, "t": args.t,
                                  "tol": args.tol})
    rep.check("welch_slack", out["slack"], args.tol)
    rep.result = out
    rep.emit(args.json)
    return rep.exit_code()


# -- sic -----------------------------------------------------------------------

def cmd_sic_search(args):
    out = sic.sic_search(args.n, restarts=args.restarts, seed=args.seed,
                         threads=_threads(args), zauner=args.zauner)
    rep = Report("sic search", {"n": args.n, "restarts": args.restarts,
                                "tol": args.tol, "zauner": args.zauner},
                 seed=args.seed)
    rep.check("fsic", out["fsic"], args.tol)
    if args.out:
        persist({"kind": "sic", "version": FORMAT_VERSION, "n": out["n"],
                 "fsic": out["fsic"], "fiducial": _vec2j(out["fiducial"]),
                 "seed": out["seed"], "restarts": out["restarts"],
                 "restart": out["restart"]}, args.out)
        rep.artifacts.append(args.out)
    rep.result = {"fsic": out["fsic"], "restart": out["restart"],
                  "fiducial": _vec2j(out["fiducial"])}
    rep.emit(args.json)
    return rep.exit_code()


def cmd_sic_verify(args):
    doc = load(args.file, "sic")
    cand = {"n": int(doc["n"]), "fiducial": _j2vec(doc["fiducial"])}
    if "fsic" in doc:
        cand["fsic"] = float(doc["fsic"])
    out = sic.sic_verify(cand, tol_gram=args.tol)
    rep = Report("sic verify", {"file": args.file, "tol": args.tol})
    rep.check("identity_deviation", out["identityDeviation"], sic.EPS_MAT)
    rep.check("gram_deviation", out["gramDeviation"], args.tol)
    rep.emit(args.json)
    return rep.exit_code()


def cmd_sic_fingerprint(args):
    if args.file:
        doc = load(args.file, "sic")
        psi = _j2vec(doc["fiducial"])
    else:
        psi = sic.dim4_fiducial()
    phases = sic.overlap_phases(sic.make_candidate(psi))
    out = sic.u_fingerprint(phases)
    rep = Report("sic fingerprint", {"file": args.file, "tol": args.tol})
    rep.check("u_deviation", out["uDeviation"], 1e-10)
    rep.check("minpoly_residual", out["minpolyResidual"], args.tol)
    rep.check("unit_residual", out["unitResidual"], args.tol)
    rep.result = {"u": _c2j(out["u"])}
    rep.emit(args.json)
    return rep.exit_code()


# -- suite ---------------------------------------------------------------------

def cmd_suite(args):
    n = args.n
    rep = Report("suite", {"n": n}, seed=args.seed)
    rep.check("weyl_orthogonality", weyl.orthogonality_max_residual(n), 1e-10)
    rep.check("weyl_group_law", weyl.group_law_max_residual(n), 1e-10)
    prime = gf.is_prime(n)
    if prime:
        bases = mub.qubit_mubs() if n == 2 else mub.ivanovic_mubs(n)
        rep.check("mub_unbiasedness",
                  mub.unbiasedness_check(bases)["max_deviation"], 1e-9)
        family = np.hstack(bases).T
        for t in (1, 2):
            out = designs.design_test(family, t)
            rep.check("design_t%d" % t, abs(out["value"] - out["target"]),
                      1e-9)
        if n == 2:
            out = designs.design_test(family, 3)
            rep.check("design_t3", abs(out["value"] - out["target"]), 1e-9)
    if prime and n % 2 and n <= 31:
        pps = wigner.phase_point_set(n)
        parity = pps[0, 0]
        rep.check("wigner_parity_square",
                  float(np.max(np.abs(parity @ parity - np.eye(n)))), 1e-10)
        rng = np.random.default_rng(args.seed)
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        rho = z @ z.conj().T
        rho = rho / np.trace(rho)
        wtab = wigner.wigner_function(rho, pps)
        rep.check("wigner_roundtrip", float(np.max(np.abs(
            wigner.reconstruct_state(wtab, pps) - rho))), 1e-10)
    if n <= 6:
        vecs = combinat.werner_basis(combinat.latin_from_group(n),
                                     combinat.fourier_matrix(n))
        rep.check("werner_gram", float(np.max(np.abs(
            vecs @ vecs.conj().T - np.eye(n * n)))), 1e-10)
    rep.emit(args.json)
    return rep.exit_code()


# -- parser --------------------------------------------------------------------

def _add_common(sub, tol=None, seed=None, threads=False, out=False):
    sub.add_argument("--json", action="store_true",
                     help="emit the run report as JSON")
    if tol is not None:
        sub.add_argument("--tol", type=float, default=tol,
                         help="check threshold (default %g)" % tol)
    if seed is not None:
        sub.add_argument("--seed", type=int, default=seed,
                         help="random seed (default %d)" % seed)
    if threads:
        sub.add_argument("--threads", type=int, default=0,
                         help="worker threads (default: HILBERT_THREADS "
                              "or machine parallelism)")
    if out:
        sub.add_argument("--out", help="write the generated artifact here")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="finhilb",
        description="discrete structures in finite-dimensional Hilbert "
                    "spaces: generation, verification, search")
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("field", help="finite-field tables")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("table", help="element/trace/order table of GF(p^k)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    _add_common(s, out=True)
    s.set_defaults(func=cmd_field_table)

    g = groups.add_parser("weyl", help="displacement operator basis")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("check", help="orthogonality and group-law residuals")
    s.add_argument("--n", type=int, required=True)
    _add_common(s, tol=1e-10)
    s.set_defaults(func=cmd_weyl_check)
    s = sub.add_parser("expand", help="displacement coefficients of a matrix")
    s.add_argument("--matrix", required=True,
                   help="JSON file: row-major matrix of [re, im] pairs")
    _add_common(s, tol=1e-10)
    s.set_defaults(func=cmd_weyl_expand)

    g = groups.add_parser("latin", help="Latin squares")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("gen", help="cyclic-group Latin square")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", action="store_true",
                   help="also count reduced squares (n <= 5)")
    _add_common(s)
    s.set_defaults(func=cmd_latin_gen)

    g = groups.add_parser("hadamard", help="complex Hadamard matrices")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("fourier", help="Fourier matrix of order n")
    s.add_argument("--n", type=int, required=True)
    _add_common(s, out=True)
    s.set_defaults(func=cmd_hadamard_fourier)

    s = groups.add_parser("werner",
                          help="maximally entangled basis from (L, H)")
    s.add_argument("--n", type=int, required=True)
    _add_common(s, tol=1e-10, out=True)
    s.set_defaults(func=cmd_werner)

    g = groups.add_parser("mub", help="mutually unbiased bases")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("gen", help="complete MUB set in dimension p^k")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    _add_common(s, tol=1e-9, seed=7, out=True)
    s.set_defaults(func=cmd_mub_gen)
    s = sub.add_parser("verify", help="orthonormality and unbiasedness")
    s.add_argument("file")
    _add_common(s, tol=1e-9)
    s.set_defaults(func=cmd_mub_verify)
    s = sub.add_parser("mermin", help="petal/flower landscape of two qubits")
    _add_common(s, seed=11)
    s.set_defaults(func=cmd_mub_mermin)
    s = sub.add_parser("search6", help="vectors unbiased to I and F in d=6")
    s.add_argument("--restarts", type=int, default=24)
    _add_common(s, tol=1e-18, seed=0, threads=True)
    s.set_defaults(func=cmd_mub_search6)

    g = groups.add_parser("wigner", help="discrete Wigner functions")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("table", help="Wigner table of a pure state")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--state", required=True,
                   help="JSON file: vector of [re, im] pairs")
    _add_common(s, tol=1e-10, out=True)
    s.set_defaults(func=cmd_wigner_table)
    s = sub.add_parser("check", help="phase-point invariant suite")
    s.add_argument("--n", type=int, required=True)
    _add_common(s, tol=1e-10, seed=0)
    s.set_defaults(func=cmd_wigner_check)

    g = groups.add_parser("clifford", help="symplectic representation")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("check", help="group order and normalizer residuals")
    s.add_argument("--p", type=int, required=True)
    _add_common(s, tol=1e-10, seed=0)
    s.set_defaults(func=cmd_clifford_check)
    s = sub.add_parser("zauner", help="order-3 invariance scan of a fiducial")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--fiducial", required=True,
                   help="sic JSON document or raw vector of [re, im] pairs")
    _add_common(s, tol=1e-6)
    s.set_defaults(func=cmd_clifford_zauner)

    g = groups.add_parser("design", help="projective t-designs")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("test", help="moment test for a vector family")
    s.add_argument("--family", required=True,
                   help="basisfamily, mubset, or sic JSON document")
    s.add_argument("--t", type=int, required=True)
    _add_common(s, tol=1e-9)
    s.set_defaults(func=cmd_design_test)
    s = sub.add_parser("welch", help="Welch bound saturation")
    s.add_argument("--family", required=True)
    s.add_argument("--t", type=int, required=True)
    _add_common(s, tol=1e-9)
    s.set_defaults(func=cmd_design_welch)

    g = groups.add_parser("sic", help="SIC fiducials")
    sub = g.add_subparsers(dest="op", required=True)
    s = sub.add_parser("search", help="seeded random-restart fiducial search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--restarts", type=int, default=32)
    s.add_argument("--zauner", action="store_true",
                   help="project starts onto an order-3 eigenspace")
    _add_common(s, tol=1e-12, seed=0, threads=True, out=True)
    s.set_defaults(func=cmd_sic_search)
    s = sub.add_parser("verify", help="orbit resolution and Gram moduli")
    s.add_argument("file")
    _add_common(s, tol=1e-8)
    s.set_defaults(func=cmd_sic_verify)
    s = sub.add_parser("fingerprint",
                       help="overlap-phase fingerprint (n = 4)")
    s.add_argument("file", nargs="?", default=None,
                   help="sic JSON document (default: the exact fiducial)")
    _add_common(s, tol=1e-8)
    s.set_defaults(func=cmd_sic_fingerprint)

    s = groups.add_parser("suite", help="cross-module invariant suite")
    s.add_argument("--n", type=int, required=True)
    _add_common(s, seed=0)
    s.set_defaults(func=cmd_suite)

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except RuntimeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(dispatch(sys.argv[1:] if argv is None else argv))
