#!/usr/bin/env python3
"""Minimal MILP solver executable for CPLEX-LP-format models.

Speaks the HiGHS command-line and solution-file dialect so it can stand in
wherever a `highs` binary would:

    milp_solve.py [--options_file F] [--time_limit T] [--solution_file S]
                  [--mip_rel_gap G] model.lp

Solving is delegated to scipy.optimize.milp (HiGHS under the hood). The
solution file uses the HiGHS raw style: a "Model status" block, the
objective, and a "# Columns" list of variable values.
"""

import argparse
import re
import sys

import numpy as np
import scipy.sparse as sp
from scipy.optimize import Bounds, LinearConstraint, milp

INF = float("inf")

_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eEdD][+-]?\d+)?$")


def _is_number(tok):
    return bool(_NUMBER.match(tok))


def _to_float(tok):
    t = tok.lower().replace("d", "e")
    v = float(t)
    if v >= 1e30:
        return INF
    if v <= -1e30:
        return -INF
    return v


class Model:
    def __init__(self):
        self.maximize = False
        self.obj = {}
        self.rows = []  # (coeffs dict, sense, rhs)
        self.lo = {}
        self.hi = {}
        self.integral = set()
        self.order = []
        self.seen = set()

    def touch(self, name):
        if name not in self.seen:
            self.seen.add(name)
            self.order.append(name)


SECTIONS = {
    "minimize": "obj",
    "minimum": "obj",
    "min": "obj",
    "maximize": "obj",
    "maximum": "obj",
    "max": "obj",
    "subject": "st",
    "such": "st",
    "st": "st",
    "s.t.": "st",
    "st.": "st",
    "bounds": "bounds",
    "bound": "bounds",
    "binaries": "bin",
    "binary": "bin",
    "bin": "bin",
    "generals": "gen",
    "general": "gen",
    "gen": "gen",
    "integers": "gen",
    "end": "end",
}


def strip_comments(text):
    return "\n".join(line.split("\\")[0] for line in text.splitlines())


def parse_expression(tokens, model, sink):
    """Consumes sign/coefficient/variable tokens into `sink` until a sense
    token or exhaustion; returns (next_index, sense_or_None)."""
    i = 0
    sign = 1.0
    coeff = None
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("<=", ">=", "=", "<", ">", "=<", "=>"):
            return i, tok
        if tok == "+":
            sign, i = sign, i + 1
            continue
        if tok == "-":
            sign, i = -sign, i + 1
            continue
        if _is_number(tok):
            v = _to_float(tok)
            coeff = (coeff if coeff is not None else 1.0) * v
            i += 1
            continue
        # a variable name
        c = sign * (coeff if coeff is not None else 1.0)
        model.touch(tok)
        sink[tok] = sink.get(tok, 0.0) + c
        sign, coeff = 1.0, None
        i += 1
    return i, None


def parse_lp(text):
    model = Model()
    text = strip_comments(text)
    # normalize sense tokens so they split cleanly
    text = re.sub(r"([<>]=?|=[<>]?)", r" \1 ", text)
    lines = text.splitlines()

    section = None
    pending = []  # accumulated tokens of the current constraint / objective

    def flush_statement(tokens):
        if not tokens:
            return
        # optional leading "name:" label
        if len(tokens) >= 2 and tokens[1] == ":":
            tokens = tokens[2:]
        elif tokens and tokens[0].endswith(":"):
            tokens = tokens[1:]
        if not tokens:
            return
        if section == "obj":
            parse_expression(tokens, model, model.obj)
            return
        coeffs = {}
        used, sense = parse_expression(tokens, model, coeffs)
        if sense is None:
            raise ValueError("constraint without a sense: %s" % " ".join(tokens))
        rhs_tokens = tokens[used + 1:]
        rhs = 0.0
        rsign = 1.0
        for tok in rhs_tokens:
            if tok == "-":
                rsign = -rsign
            elif tok == "+":
                continue
            elif _is_number(tok):
                rhs = rsign * _to_float(tok)
        s = {"<": "<=", "=<": "<=", ">": ">=", "=>": ">="}.get(sense, sense)
        model.rows.append((coeffs, s, rhs))

    def parse_bound_line(tokens):
        toks = [t for t in tokens if t != ":"]
        if not toks:
            return
        if len(toks) == 2 and toks[1].lower() == "free":
            model.touch(toks[0])
            model.lo[toks[0]] = -INF
            model.hi[toks[0]] = INF
            return
        senses = [t for t in toks if t in ("<=", ">=", "=")]
        if len(senses) == 2:  # lo <= x <= hi
            lo, name, hi = toks[0], toks[2], toks[4]
            model.touch(name)
            model.lo[name] = _to_float(lo)
            model.hi[name] = _to_float(hi)
        elif len(senses) == 1:
            a, s, b = toks[0], toks[1], toks[2]
            if _is_number(a):  # number sense var
                model.touch(b)
                if s == "<=":
                    model.lo[b] = _to_float(a)
                elif s == ">=":
                    model.hi[b] = _to_float(a)
                else:
                    model.lo[b] = model.hi[b] = _to_float(a)
            else:  # var sense number
                model.touch(a)
                if s == "<=":
                    model.hi[a] = _to_float(b)
                elif s == ">=":
                    model.lo[a] = _to_float(b)
                else:
                    model.lo[a] = model.hi[a] = _to_float(b)

    for raw in lines:
        tokens = raw.replace(":", " : ").split()
        if not tokens:
            continue
        first = tokens[0].lower()
        if first in SECTIONS and (len(tokens) == 1 or first not in ("st",)):
            new_section = SECTIONS[first]
            if new_section in ("obj", "st", "bounds", "bin", "gen", "end"):
                flush_statement(pending)
                pending = []
                if new_section == "obj":
                    model.maximize = first.startswith("max")
                section = new_section
                # "subject to" spans two tokens; anything after is content
                rest = tokens[1:]
                if rest and rest[0].lower() == "to":
                    rest = rest[1:]
                if rest:
                    pending = rest
                continue
        if section in ("obj",):
            pending.extend(tokens)
            # objective gathered until the next section keyword
        elif section == "st":
            pending.extend(tokens)
            # a full constraint ends when its rhs number follows a sense token
            if len(pending) >= 3 and pending[-2] in ("<=", ">=", "=", "<", ">", "=<", "=>") \
               and _is_number(pending[-1]):
                flush_statement(pending)
                pending = []
        elif section == "bounds":
            parse_bound_line(tokens)
        elif section == "bin":
            for name in tokens:
                model.touch(name)
                model.integral.add(name)
                model.lo.setdefault(name, 0.0)
                model.hi.setdefault(name, 1.0)
                model.lo[name] = max(model.lo[name], 0.0)
                model.hi[name] = min(model.hi[name], 1.0)
        elif section == "gen":
            for name in tokens:
                model.touch(name)
                model.integral.add(name)
    flush_statement(pending)
    return model


def solve(model, time_limit, gap):
    names = model.order
    n = len(names)
    if n == 0:
        return "Optimal", 0.0, {}

    index = {name: i for i, name in enumerate(names)}
    c = np.zeros(n)
    for name, v in model.obj.items():
        c[index[name]] = v
    if model.maximize:
        c = -c

    lo = np.array([model.lo.get(name, 0.0) for name in names])
    hi = np.array([model.hi.get(name, INF) for name in names])
    integrality = np.array([1 if name in model.integral else 0 for name in names])

    constraints = None
    if model.rows:
        data, rows, cols, lb, ub = [], [], [], [], []
        for r, (coeffs, sense, rhs) in enumerate(model.rows):
            for name, v in coeffs.items():
                rows.append(r)
                cols.append(index[name])
                data.append(v)
            if sense == "<=":
                lb.append(-INF)
                ub.append(rhs)
            elif sense == ">=":
                lb.append(rhs)
                ub.append(INF)
            else:
                lb.append(rhs)
                ub.append(rhs)
        a = sp.csr_matrix((data, (rows, cols)), shape=(len(model.rows), n))
        constraints = LinearConstraint(a, np.array(lb), np.array(ub))

    options = {"presolve": True}
    if time_limit is not None:
        options["time_limit"] = max(time_limit, 0.0)
    if gap is not None:
        options["mip_rel_gap"] = gap

    res = milp(c=c, constraints=constraints, integrality=integrality,
               bounds=Bounds(lo, hi), options=options)

    status_map = {
        0: "Optimal",
        1: "Time limit reached",
        2: "Infeasible",
        3: "Unbounded",
    }
    status = status_map.get(res.status)
    if status is None:
        raise RuntimeError("solver failed: %s" % res.message)

    values = {}
    objective = 0.0
    if res.x is not None:
        # snap integer variables (HiGHS returns them within tolerance)
        xs = res.x.copy()
        for i in range(n):
            if integrality[i]:
                xs[i] = round(xs[i])
        values = {name: xs[i] for i, name in enumerate(names)}
        objective = float(np.dot(c, xs))
        if model.maximize:
            objective = -objective
    return status, objective, values


def write_solution(path, status, objective, values):
    lines = ["Model status", status, "", "# Primal solution values"]
    if values or status == "Optimal":
        lines.append("Feasible")
        lines.append("Objective %.17g" % objective)
        lines.append("# Columns %d" % len(values))
        for name, v in values.items():
            lines.append("%s %.17g" % (name, v))
    else:
        lines.append("None")
    lines.append("# Rows 0")
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def read_options_file(path):
    opts = {}
    with open(path) as f:
        for line in f:
            line = line.split("#")[0].strip()
            if not line or "=" not in line:
                continue
            key, value = (s.strip() for s in line.split("=", 1))
            opts[key] = value
    return opts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("model")
    ap.add_argument("--solution_file", default=None)
    ap.add_argument("--time_limit", type=float, default=None)
    ap.add_argument("--mip_rel_gap", type=float, default=None)
    ap.add_argument("--options_file", default=None)
    ap.add_argument("--random_seed", default=None)  # accepted for interface parity
    args = ap.parse_args()

    gap = args.mip_rel_gap
    if args.options_file:
        opts = read_options_file(args.options_file)
        if gap is None and "mip_rel_gap" in opts:
            gap = float(opts["mip_rel_gap"])

    with open(args.model) as f:
        model = parse_lp(f.read())

    status, objective, values = solve(model, args.time_limit, gap)
    write_solution(args.solution_file, status, objective, values)
    print("Model status: %s, objective %.17g" % (status, objective))


if __name__ == "__main__":
    try:
        main()
    except Exception as exc:  # any failure is a nonzero exit for the caller
        sys.stderr.write("milp_solve.py: %s\n" % exc)
        sys.exit(1)
