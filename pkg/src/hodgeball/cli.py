"""Command-line front end.

Exit status: 0 on success, 2 when a computed mathematical verdict is
negative (not ball type, not in N+, ...), 1 when the input could not be
processed.
"""

import argparse
import json
import sys

from . import linalg
from .eigen import (
    ArrangementData,
    dm_hodge_number,
    dm_hodge_table,
    dm_total_dim,
    eigen_ball_conditions,
    eigen_graded_dim,
    eigen_hodge_numbers,
    filtration_dims,
)
from .formalvhs import (
    HorizontalData,
    InvalidHorizontalData,
    NotBallType,
    ball_membership,
    ball_type_verify,
    canonical_coordinates,
    check_order_bounds,
    check_transversality,
    nilpotent_orbit,
    orbit_point,
    refined_period,
    refined_rank,
    section_block,
    section_expansion,
    section_hr_value,
)
from .hodgeframe import HodgeNumbers, standard_frame
from .perioddomain import (
    NotInNPlus,
    PeriodMatrix,
    block_lu,
    is_block_lower_unipotent,
    is_block_upper,
    nplus_membership,
    nplus_rank_oracle,
    random_block_upper,
    random_lower_unipotent,
    seeded_rng,
)
from .polyring import DegreeLimitExceeded, ParseError, format_monomial, parse_polynomial
from .residue import (
    Hypersurface,
    SingularHypersurface,
    ball_type_check,
    cyclic_cover,
    hodge_pieces,
    jacobian_ring,
    smoothness_check,
    tangent_basis,
)
from .scalar import as_scalar, format_scalar, to_complex
from .series import BlockSeries


class InputError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _emit(doc, args, table_lines):
    if args.report == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print("\n".join(table_lines))


def _table(header, rows):
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    out.extend(fmt.format(*r) for r in rows)
    return [line.rstrip() for line in out]


def _load_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _int_list(text, name):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--{name} expects comma-separated integers") from None


def _scalar_list(text, name):
    out = []
    for pos, part in enumerate(text.split(",")):
        try:
            out.append(as_scalar(part.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--{name}: entry {pos + 1}: {exc}") from None
    return out


def _hypersurface(args):
    if not args.poly:
        raise InputError("--poly is required")
    nvars = args.vars
    if nvars is None and args.dim is not None:
        nvars = args.dim + 2
    poly = parse_polynomial(args.poly, nvars)
    if args.dim is not None and poly.nvars != args.dim + 2:
        raise InputError(f"--dim {args.dim} needs {args.dim + 2} variables, polynomial has {poly.nvars}")
    X = Hypersurface(poly)
    if args.degree is not None and X.degree != args.degree:
        raise InputError(f"polynomial has degree {X.degree}, not {args.degree}")
    return X


def _tangent_vars(args, X):
    k = getattr(args, "base_vars", None)
    if k is None:
        return None
    if not 1 <= k <= X.nvars:
        raise InputError(f"--base-vars must lie in 1..{X.nvars}")
    return list(range(k))


# ---------------------------------------------------------------- subcommands

def cmd_jacobian(args):
    X = _hypersurface(args)
    pieces = hodge_pieces(X)
    doc = {
        "n": X.n,
        "degree": X.degree,
        "smooth": True,
        "hodge_numbers": [p["dim"] for p in pieces],
        "pieces": [
            {
                "p": p["p"],
                "q": p["q"],
                "degree": p["degree"],
                "dim": p["dim"],
                "basis": [format_monomial(e) for e in p["basis"]],
            }
            for p in pieces
        ],
    }
    lines = [f"n = {X.n}, d = {X.degree}"]
    lines += _table(
        ["piece", "ring degree", "dim", "basis"],
        [
            [f"h^{{{p['p']},{p['q']}}}_pr", p["degree"], p["dim"], _short([format_monomial(e) for e in p["basis"]])]
            for p in pieces
        ],
    )
    if args.tangent_degree is not None:
        tb = tangent_basis(X, args.tangent_degree, _tangent_vars(args, X))
        doc["tangent_degree"] = args.tangent_degree
        doc["tangent_dim"] = len(tb)
        doc["tangent_basis"] = [format_monomial(e) for e in tb]
        lines.append(f"tangent piece R^{args.tangent_degree}: dim {len(tb)}")
    _emit(doc, args, lines)
    return 0


def _short(items, limit=6):
    if len(items) <= limit:
        return ", ".join(items)
    return ", ".join(items[:limit]) + f", ... ({len(items)} total)"


def cmd_balltype(args):
    X = _hypersurface(args)
    report = ball_type_check(
        X, args.tangent_degree, _tangent_vars(args, X), exhaustive=args.exhaustive, jobs=args.jobs
    )
    doc = report.to_dict()
    lines = [
        f"k = {report.k}, omega = {report.omega}",
        f"tangent dim = {report.tangent_dim}, star1 rank = {report.star1_rank}",
        f"star1: {report.star1}",
        f"star2: {report.star2} ({report.pairs_checked} pairs checked)",
    ]
    if report.witnesses:
        lines.append("non-vanishing products: " + _short(report.witnesses))
    _emit(doc, args, lines)
    return 0 if report.ball_type else 2


def cmd_cover(args):
    X = _hypersurface(args)
    r = args.cover_degree if args.cover_degree is not None else X.degree
    Y = cyclic_cover(X, r)
    doc = {"poly": str(Y.poly), "n": Y.n, "degree": Y.degree, "vars": Y.nvars}
    if smoothness_check(Y):
        doc["hodge_numbers"] = [p["dim"] for p in hodge_pieces(Y)]
    lines = [f"cover: {Y.poly}", f"n = {Y.n}, d = {Y.degree}"]
    if "hodge_numbers" in doc:
        lines.append("primitive Hodge numbers: " + " ".join(map(str, doc["hodge_numbers"])))
    _emit(doc, args, lines)
    return 0


def cmd_lu(args):
    if args.random is not None:
        return _lu_random(args)
    if not args.matrix:
        raise InputError("lu needs --matrix FILE or --random COUNT")
    data = _load_json(args.matrix)
    try:
        pm = PeriodMatrix.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{args.matrix}: expected keys 'h' and 'matrix' ({exc})") from None
    member, k = nplus_membership(pm, pm.h)
    doc = {"h": list(pm.h), "member": member}
    if not member:
        doc["witness"] = k
        _emit(doc, args, [f"not in N+: leading block minor {k} is singular"])
        return 2
    L, U = block_lu(pm, pm.h)
    doc["L"] = linalg.format_matrix(L)
    doc["U"] = linalg.format_matrix(U)
    lines = ["in N+", "L ="] + [" ".join(r) for r in linalg.format_matrix(L)]
    lines += ["U ="] + [" ".join(r) for r in linalg.format_matrix(U)]
    _emit(doc, args, lines)
    return 0


def _lu_random(args):
    h = _int_list(args.h or "1,4,4,1", "h")
    rng = seeded_rng(args.seed)
    stats = {"samples": args.random, "roundtrip": 0, "unique": 0, "oracle_agrees": 0}
    for _ in range(args.random):
        L = random_lower_unipotent(h, rng)
        U = random_block_upper(h, rng)
        A = linalg.matmul(L, U)
        L2, U2 = block_lu(A, h)
        if linalg.equal(linalg.matmul(L2, U2), A) and is_block_lower_unipotent(L2, h) and is_block_upper(U2, h):
            stats["roundtrip"] += 1
        V = random_block_upper(h, rng)
        L3, _ = block_lu(linalg.matmul(A, V), h)
        if linalg.equal(L2, L3) and linalg.equal(L2, L):
            stats["unique"] += 1
        if nplus_membership(A, h) == nplus_rank_oracle(A, h):
            stats["oracle_agrees"] += 1
    ok = stats["roundtrip"] == stats["unique"] == stats["oracle_agrees"] == args.random
    doc = dict(stats, h=h, seed=args.seed, ok=ok)
    lines = _table(["check", "passed"], [[k, f"{v}/{args.random}"] for k, v in stats.items() if k != "samples"])
    _emit(doc, args, lines)
    return 0 if ok else 2


def _load_data(path):
    data = _load_json(path)
    try:
        return HorizontalData.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: expected keys 'h' and 'operators' ({exc})") from None


def _default_k(numbers):
    top = next(a for a in range(numbers.weight + 1) if numbers.h[a])
    return numbers.weight - top


def cmd_orbit(args):
    if args.series:
        phi = BlockSeries.from_dict(_load_json(args.series))
        data = None
    elif args.config:
        data = _load_data(args.config)
        if not data.valid:
            doc = {"flags": data.flags()}
            try:
                data.require_valid()
            except InvalidHorizontalData as exc:
                doc["error"] = str(exc)
            _emit(doc, args, [f"invalid horizontal data: {doc['error']}"])
            return 2
        order = args.order if args.order is not None else data.numbers.weight + 2
        phi = nilpotent_orbit(data, order)
    else:
        raise InputError("orbit needs --config FILE or --series FILE")
    trans = check_transversality(phi)
    bounds = check_order_bounds(phi)
    doc = {
        "order": phi.order,
        "vars": phi.nvars,
        "h": list(phi.numbers.h),
        "transversality": trans.to_dict(),
        "order_bounds": bounds.to_dict(),
    }
    lines = [
        f"order T = {phi.order}, N = {phi.nvars}, h = {list(phi.numbers.h)}",
        f"transversality: {trans.holds}" + (f" (first failure {trans.witness}: {trans.lhs} vs {trans.rhs})" if not trans.holds else ""),
        f"order bounds: {bounds.holds}" + (f" (block {bounds.block})" if not bounds.holds else ""),
    ]
    k = args.k if args.k is not None else _default_k(phi.numbers)
    a0 = section_block(phi.numbers, k)
    if phi.numbers.h[a0] == 1 and a0 < phi.numbers.weight and phi.numbers.h[a0 + 1] == phi.nvars:
        cc = canonical_coordinates(phi, k)
        doc["canonical_coordinates"] = cc.to_dict()
        lines.append(f"canonical coordinates invertible: {cc.invertible}")
        if cc.invertible:
            exp = section_expansion(phi, k, data=data)
            doc["section_expansion"] = exp.to_dict()
            lines.append(f"section expansion: max degree {exp.max_degree}, linear {exp.linear}")
        if data is not None:
            col = phi.numbers.block(a0)[0]
            omega0 = [int(i == col) for i in range(phi.numbers.m)]
            bt = ball_type_verify(data, omega0, phi.order)
            doc["ball_type"] = bt.to_dict()
            lines.append(f"ball type: star1 {bt.star1}, star2 {bt.star2}" + (f", witness {bt.witness}" if bt.witness else ""))
    if data is not None:
        doc["flags"] = data.flags()
    _emit(doc, args, lines)
    return 0 if trans.holds and bounds.holds else 2


def cmd_refine(args):
    if not args.config:
        raise InputError("refine needs --config FILE")
    data = _load_data(args.config)
    try:
        data.require_valid()
    except InvalidHorizontalData as exc:
        raise InputError(str(exc)) from None
    nums = data.numbers
    k = args.k if args.k is not None else _default_k(nums)
    if args.sample:
        return _refine_sample(args, data, k)
    if not args.point:
        raise InputError("refine needs --point or --sample")
    z = _scalar_list(args.point, "point")
    if len(z) != data.nvars:
        raise InputError(f"--point needs {data.nvars} coordinates")
    P = orbit_point(data, z)
    doc = {"k": k}
    try:
        p = refined_period(P, k, nums)
    except NotBallType as exc:
        doc["error"] = str(exc)
        _emit(doc, args, [str(exc)])
        return 2
    inside = ball_membership(p)
    doc.update(p.to_dict())
    doc["in_ball"] = inside
    lines = ["refined point: (" + ", ".join(format_scalar(x) for x in p.values) + ")", f"in ball: {inside}"]
    if data.Q == standard_frame(nums).adapted_Q():
        col = nums.block(section_block(nums, k))[0]
        v = [row[col] for row in P]
        hr = section_hr_value(standard_frame(nums), v, k)
        doc["hr_value"] = format_scalar(hr)
        lines.append(f"Hodge-Riemann value on the section line: {format_scalar(hr)}")
    doc["jacobian_rank"] = refined_rank(nilpotent_orbit(data, 1), k)
    _emit(doc, args, lines)
    return 0 if inside else 2


def _refine_sample(args, data, k):
    rng = seeded_rng(args.seed)
    points = []
    for _ in range(args.sample):
        z = [as_scalar(f"{rng.randint(-20, 20)}/{rng.randint(1, 20) * data.nvars}") for _ in range(data.nvars)]
        p = refined_period(orbit_point(data, z), k, data.numbers)
        w = [to_complex(x) for x in p.values]
        points.append({"re": [c.real for c in w], "im": [c.imag for c in w], "in_ball": ball_membership(p)})
    doc = {"k": k, "seed": args.seed, "points": points}
    inside = sum(1 for p in points if p["in_ball"])
    _emit(doc, args, [f"{len(points)} samples, {inside} inside the ball"])
    return 0


def cmd_dm(args):
    if args.sweep is not None:
        return _dm_sweep(args)
    if args.config:
        cfg = _load_json(args.config)
        try:
            data = ArrangementData.from_dict(cfg, check_general_position=not args.skip_general_position)
        except KeyError as exc:
            raise InputError(f"{args.config}: missing key {exc}") from None
    else:
        if args.m is None or args.dim is None or not args.mu:
            raise InputError("dm needs --config FILE or --m, --dim and --mu")
        mu = [x.strip() for x in args.mu.split(",")]
        if len(mu) == 1:
            mu = mu * args.m
        data = ArrangementData.generic(args.m, args.dim, mu)
    table = dm_hodge_table(data)
    total = dm_total_dim(data.m, data.n)
    doc = {
        "m": data.m,
        "n": data.n,
        "mu_sum": data.total,
        "d": data.d,
        "hodge_numbers": table,
        "total": total,
        "identity_holds": sum(table) == total,
    }
    lines = [f"m = {data.m}, n = {data.n}, |mu| = {data.total}, d = {data.d}"]
    lines += _table(["p", "q", "h^{p,q}_chi"], [[data.n - a, a, v] for a, v in enumerate(table)])
    lines.append(f"sum = {sum(table)}, C(m-2, n) = {total}")
    _emit(doc, args, lines)
    return 0 if doc["identity_holds"] else 2


def _dm_sweep(args):
    rows, ok = [], True
    for m in range(3, args.sweep + 1):
        for n in range(1, m - 1):
            for s in range(1, m):
                hs = [dm_hodge_number(m, n, s, n - a, a) for a in range(n + 1)]
                good = sum(hs) == dm_total_dim(m, n)
                if s == n + 1:
                    good = good and hs[0] == 1 and (n < 1 or hs[1] == n * (m - n - 2))
                ok = ok and good
                rows.append({"m": m, "n": n, "mu_sum": s, "hodge_numbers": hs, "ok": good})
    doc = {"cases": len(rows), "ok": ok, "rows": rows}
    _emit(doc, args, [f"{len(rows)} cases, all identities hold: {ok}"])
    return 0 if ok else 2


def cmd_eigen_dims(args):
    X = _hypersurface(args)
    R = jacobian_ring(X)
    if not args.weights:
        raise InputError("--weights is required")
    weights = _int_list(args.weights, "weights")
    if len(weights) != X.nvars:
        raise InputError(f"--weights needs {X.nvars} entries")
    mod = args.modulus
    top = R.socle_degree()
    indices = [args.index] if args.index is not None else list(range(mod))
    rows = [[deg] + [eigen_graded_dim(R, weights, deg, i, mod) for i in indices] for deg in range(top + 1)]
    doc = {
        "modulus": mod,
        "weights": weights,
        "indices": indices,
        "dims": {str(i): [r[c + 1] for r in rows] for c, i in enumerate(indices)},
    }
    lines = _table(["degree"] + [f"index {i}" for i in indices], rows)
    status = 0
    if args.index is not None:
        hn = eigen_hodge_numbers(X, weights, args.index, mod)
        dims = filtration_dims(hn)
        doc["hodge_numbers"] = hn
        doc["filtration_dims"] = dims
        lines.append("eigen Hodge numbers (h^{n,0} .. h^{0,n}): " + " ".join(map(str, hn)))
        lines.append("dim F^j, j = 0..n+1: " + " ".join(map(str, dims)))
        if args.tangent_dim is not None:
            k = max((j for j, d in enumerate(dims) if d), default=0)
            if k >= 1:
                rep = eigen_ball_conditions(dims, k, args.tangent_dim)
                doc["ball_conditions"] = dict(rep.to_dict(), k=k)
                lines.append(f"eigen-ball conditions at k = {k}: {rep.to_dict()}")
                status = 0 if rep.verdict else 2
    _emit(doc, args, lines)
    return status


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=["json", "table"], default="table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    poly = argparse.ArgumentParser(add_help=False)
    poly.add_argument("--poly", help="polynomial, e.g. 'x0^3 + x1^3 + x2^3 + x3^3'")
    poly.add_argument("--vars", type=int, help="number of variables (default: from the polynomial)")
    poly.add_argument("--dim", type=int, help="dimension n of the hypersurface (n + 2 variables)")
    poly.add_argument("--degree", type=int, help="expected degree")

    parser = argparse.ArgumentParser(prog="hodgeball", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jacobian", parents=[common, poly], help="primitive Hodge numbers via the Jacobian ring")
    p.add_argument("--tangent-degree", type=int)
    p.add_argument("--base-vars", type=int, help="tangent monomials use only x0..x(K-1)")
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("balltype", parents=[common, poly], help="ball-type conditions for a hypersurface")
    p.add_argument("--tangent-degree", type=int)
    p.add_argument("--base-vars", type=int, help="tangent monomials use only x0..x(K-1) (cyclic covers)")
    p.add_argument("--exhaustive", action="store_true", help="test every basis element as Omega")
    p.set_defaults(func=cmd_balltype)

    p = sub.add_parser("cover", parents=[common, poly], help="cyclic cover F + x_new^r")
    p.add_argument("--cover-degree", type=int, help="r (default: degree of F)")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("lu", parents=[common], help="N+ membership and block LU")
    p.add_argument("--matrix", help="JSON file {\"h\": [...], \"matrix\": [[...]]}")
    p.add_argument("--random", type=int, help="check COUNT random products L U instead")
    p.add_argument("--h", help="Hodge numbers for --random, e.g. 1,4,4,1")
    p.set_defaults(func=cmd_lu)

    p = sub.add_parser("orbit", parents=[common], help="nilpotent orbit and all series checkers")
    p.add_argument("--config", help="horizontal data JSON {\"h\", \"operators\", optional \"Q\"}")
    p.add_argument("--series", help="series JSON {\"vars\", \"order\", \"h\", \"coeffs\"}")
    p.add_argument("--order", type=int)
    p.add_argument("--k", type=int, help="level of the section (default: top nonzero piece)")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("refine", parents=[common], help="refined period point and ball membership")
    p.add_argument("--config", help="horizontal data JSON")
    p.add_argument("--point", help="comma-separated coordinates, e.g. 1/2,1/3+1/5*i")
    p.add_argument("--sample", type=int, help="emit COUNT random points as floating complex JSON")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("dm", parents=[common], help="Deligne-Mostow eigenspace Hodge numbers")
    p.add_argument("--config", help="arrangement JSON {\"m\", \"n\", \"mu\", \"coeffs\"}")
    p.add_argument("--m", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--mu", help="weights; a single value is repeated m times")
    p.add_argument("--sweep", type=int, metavar="MAX_M", help="check the identities for all m <= MAX_M")
    p.add_argument("--skip-general-position", action="store_true")
    p.set_defaults(func=cmd_dm)

    p = sub.add_parser("eigen-dims", parents=[common, poly], help="eigen-graded Jacobian ring dimensions")
    p.add_argument("--weights", help="diagonal action weights, one per variable")
    p.add_argument("--modulus", type=int, default=3)
    p.add_argument("--index", type=int)
    p.add_argument("--tangent-dim", type=int)
    p.set_defaults(func=cmd_eigen_dims)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: --poly: {exc}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * (exc.column - 1)}^", file=sys.stderr)
        return 1
    except (InputError, SingularHypersurface, NotInNPlus, DegreeLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
