#!/usr/bin/env python3
"""Reference driver for the emitted LP models.

Parses the LP text produced by `dagelim ilp`, solves the binary program
with HiGHS (scipy.optimize.milp), and writes a `name value` solution file
that `dagelim ilp-check` accepts.

Usage: solve_lp.py model.lp solution.txt
"""

import re
import sys


def tokenize_terms(text):
    """Yields (coefficient, name) pairs from a linear expression."""
    for sign, coef, name in re.findall(
            r"([+-]?)\s*(\d+(?:\.\d+)?)?\s*([A-Za-z_][A-Za-z0-9_]*)", text):
        value = float(coef) if coef else 1.0
        if sign == "-":
            value = -value
        yield value, name


def parse_lp(path):
    sections = {"objective": "", "rows": [], "bounds": [], "binaries": []}
    section = None
    with open(path) as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if line.startswith("\\"):
                continue
            stripped = line.strip()
            if stripped in ("Minimize", "Maximize"):
                section = "objective"
                continue
            if stripped == "Subject To":
                section = "rows"
                continue
            if stripped == "Bounds":
                section = "bounds"
                continue
            if stripped in ("Binaries", "Binary", "General"):
                section = "binaries"
                continue
            if stripped == "End":
                break
            if section == "objective":
                sections["objective"] += " " + stripped
            elif section == "rows":
                if re.match(r"^c\d+:", stripped):
                    sections["rows"].append(stripped)
                else:
                    sections["rows"][-1] += " " + stripped
            elif section == "bounds":
                sections["bounds"].append(stripped)
            elif section == "binaries":
                sections["binaries"].extend(stripped.split())
    return sections


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    import numpy as np
    from scipy import sparse
    from scipy.optimize import LinearConstraint, milp

    sections = parse_lp(sys.argv[1])

    var_ids = {}

    def var(name):
        if name not in var_ids:
            var_ids[name] = len(var_ids)
        return var_ids[name]

    objective = sections["objective"].split(":", 1)[1]
    obj_terms = [(c, var(n)) for c, n in tokenize_terms(objective)]
    rows = []
    for row in sections["rows"]:
        body = row.split(":", 1)[1]
        match = re.search(r"(<=|>=|=)\s*([+-]?\d+(?:\.\d+)?)\s*$", body)
        if not match:
            sys.exit("cannot parse row: " + row)
        sense, rhs = match.group(1), float(match.group(2))
        terms = [(c, var(n)) for c, n in tokenize_terms(body[: match.start()])]
        rows.append((terms, sense, rhs))
    fixed = {}
    for line in sections["bounds"]:
        name, value = line.split("=")
        fixed[var(name.strip())] = float(value)
    for name in sections["binaries"]:
        var(name)

    n = len(var_ids)
    c = np.zeros(n)
    for coef, v in obj_terms:
        c[v] += coef

    data, ri, ci, lo, hi = [], [], [], [], []
    for idx, (terms, sense, rhs) in enumerate(rows):
        for coef, v in terms:
            data.append(coef)
            ri.append(idx)
            ci.append(v)
        lo.append(rhs if sense in (">=", "=") else -np.inf)
        hi.append(rhs if sense in ("<=", "=") else np.inf)
    a = sparse.coo_matrix((data, (ri, ci)), shape=(len(rows), n))

    lower = np.zeros(n)
    upper = np.ones(n)
    for v, value in fixed.items():
        lower[v] = upper[v] = value

    result = milp(
        c=c,
        constraints=LinearConstraint(a, np.array(lo), np.array(hi)),
        integrality=np.ones(n),
        bounds=__import__("scipy.optimize", fromlist=["Bounds"]).Bounds(lower, upper),
    )
    if not result.success:
        sys.exit("solver failed: " + result.message)

    names = sorted(var_ids, key=var_ids.get)
    with open(sys.argv[2], "w") as out:
        out.write("# objective %.6f\n" % result.fun)
        for name, value in zip(names, result.x):
            out.write("%s %d\n" % (name, round(value)))
    print("objective", result.fun)


if __name__ == "__main__":
    main()
