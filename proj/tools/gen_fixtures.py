#!/usr/bin/env python3
"""Regenerate the service golden fixtures by replaying each request against a
running `mechlin serve`. Review the diff before committing new fixtures."""

import argparse
import json
import os
import socket
import subprocess
import sys
import time
import urllib.error
import urllib.request


def M(rows, scalar="rational", **extra):
    doc = {"scalar": scalar, "rows": len(rows), "cols": len(rows[0]), "entries": rows}
    doc.update(extra)
    return doc


EQ2 = M([["2", "1", "0"], ["1", "0", "-1"], ["0", "1", "1"]])
SWAP = M([["0", "1"], ["1", "0"]])
SING = M([["1", "2"], ["2", "4"]])
RAND6 = M([[0.3, -1.2, 0.7, 2.0, -0.4, 1.1], [1.5, 0.2, -0.9, 0.6, 1.3, -2.1], [-0.8, 1.7, 0.4, -1.6, 0.9, 0.5],
           [2.2, -0.3, 1.8, 0.1, -1.4, 0.8], [-1.1, 0.6, -2.3, 1.2, 0.7, -0.2], [0.4, 1.9, 0.3, -0.7, 2.4, 1.0]],
          "double")

CASES = [
    # payloads
    ("parse_coefficient_system", "/v1/parse", {"text": "3x + 4y = 7; 2x − 8y = 1"}),
    ("parse_complex", "/v1/parse", {"text": "(1+i)x + y = 2i; x - y = 0", "complex": True}),
    ("factor_plu_no_pivot", "/v1/factor", {"kind": "plu", "pivoting": "none", "matrix": EQ2}),
    ("factor_plu_partial_double", "/v1/factor",
     {"kind": "plu", "matrix": M([[1.0, 2.0], [3.0, 4.0]], "double")}),
    ("factor_turing", "/v1/factor", {"kind": "turing", "matrix": M([["1", "2", "3"], ["2", "4", "7"]])}),
    ("factor_qr_exact", "/v1/factor", {"kind": "qr", "matrix": M([["3", "1"], ["4", "2"]])}),
    ("factor_ldlt", "/v1/factor", {"kind": "ldlt", "matrix": M([["4", "2"], ["2", "3"]])}),
    ("factor_block_lu", "/v1/factor", {"kind": "block_lu", "blocks": [["B11", "B12"], ["B21", "B22"]]}),
    ("factor_schur", "/v1/factor", {"kind": "schur", "split": 1, "matrix": EQ2}),
    ("det_schur", "/v1/det", {"method": "schur", "matrix": EQ2}),
    ("det_symbolic", "/v1/det", {"method": "symbolic", "n": 3}),
    ("det_poly", "/v1/det", {"matrix": M([["a", "1"], ["1", "a"]], "poly")}),
    ("solve_unique", "/v1/solve", {"A": M([["3", "4"], ["2", "-8"]]), "b": ["7", "1"]}),
    ("solve_family", "/v1/solve", {"A": SING, "b": ["3", "6"], "method": "turing"}),
    ("solve_inconsistent", "/v1/solve", {"A": SING, "b": ["1", "1"]}),
    ("solve_lstsq", "/v1/solve", {"A": M([["1", "0"], ["1", "1"], ["1", "2"]]), "b": ["6", "0", "0"],
                                  "method": "lstsq"}),
    ("inverse_exam", "/v1/inverse", {"matrix": EQ2}),
    ("eig_rotation", "/v1/eig", {"matrix": M([["0", "-1"], ["1", "0"]])}),
    ("eig_gallery3", "/v1/eig", {"matrix": M([["-149", "-50", "-154"], ["537", "180", "546"], ["-27", "-9", "-25"]]),
                                 "condition": True}),
    ("eig_exact", "/v1/eig", {"matrix": M([["0", "2"], ["1", "0"]]), "exact": True}),
    ("svd_diag", "/v1/svd", {"matrix": M([["3", "0"], ["0", "4"]])}),
    ("companion_frobenius", "/v1/companion", {"kind": "frobenius", "poly": "z^3-6z^2+11z-6"}),
    ("companion_pencil", "/v1/companion", {"kind": "pencil", "poly": "3z^2+z+1"}),
    ("companion_colleague", "/v1/companion", {"kind": "colleague", "coeffs": ["2", "-1", "3"]}),
    ("companion_mandelbrot", "/v1/companion", {"kind": "mandelbrot", "n": 3}),
    ("companion_min_height", "/v1/companion", {"kind": "min_height", "poly": "z^2-2"}),
    ("companion_charpoly", "/v1/companion", {"kind": "charpoly", "matrix": EQ2}),
    ("param_rref", "/v1/param/rref", {"matrix": M([["a", "1"], ["1", "a"]], "poly"), "at": "1"}),
    ("gen_circulant", "/v1/gen", {"kind": "circulant", "size": 3, "first_row": ["1", "2", "3"]}),
    ("gen_unimodular_seeded", "/v1/gen", {"kind": "unimodular_random", "size": 3, "seed": 7}),
    ("apply", "/v1/apply", {"matrix": M([["1/4", "3/4"], ["1", "1/2"]]), "vector": ["1", "0"]}),
    ("project_singular_cube", "/v1/project",
     {"A": M([["1", "0", "1"], ["0", "1", "1"], ["0", "0", "0"]]), "b": ["1", "2", "3"]}),
    ("exam_mc", "/v1/exam/mc", {"true_value": 1.4142135623730951, "options": [1.2, 1.3, 1.5, 1.8]}),
    ("exam_unimodular", "/v1/exam/unimodular", {"seed": 3}),
    ("cayley", "/v1/cayley", {"matrix": M([["0", "1"], ["-1", "0"]])}),
    # one per ApiError code
    ("err_division_by_zero", "/v1/parse", {"text": "x = 1/0"}),
    ("err_variable_mismatch", "/v1/det", {"matrix": M([["z", "1"], ["1", "t"]], "poly")}),
    ("err_shape_mismatch", "/v1/apply", {"matrix": EQ2, "vector": ["1", "2"]}),
    ("err_not_square", "/v1/det", {"matrix": M([["1", "2", "3"], ["4", "5", "6"]])}),
    ("err_syntax", "/v1/parse", {"text": "3x + = 7"}),
    ("err_nonlinear", "/v1/parse", {"text": "x*y = 1"}),
    ("err_empty_equation", "/v1/parse", {"text": " = 5"}),
    ("err_zero_pivot", "/v1/factor", {"kind": "plu", "pivoting": "none", "matrix": SWAP}),
    ("err_singular", "/v1/inverse", {"matrix": SING}),
    ("err_singular_block", "/v1/factor", {"kind": "schur", "split": 1, "matrix": SWAP}),
    ("err_rank_deficient", "/v1/factor", {"kind": "qr", "matrix": SING}),
    ("err_not_symmetric", "/v1/factor", {"kind": "ldlt", "matrix": M([["1", "2"], ["3", "4"]])}),
    ("err_not_positive_definite", "/v1/factor", {"kind": "cholesky", "matrix": M([["1", "2"], ["2", "1"]])}),
    ("err_not_skew_symmetric", "/v1/cayley", {"matrix": SWAP}),
    ("err_non_invertible", "/v1/factor", {"kind": "block_lu", "blocks": [["0", "B12"], ["B21", "B22"]]}),
    ("err_non_convergence", "/v1/eig", {"matrix": RAND6, "max_iterations": 1}),
    ("err_not_monic", "/v1/companion", {"kind": "frobenius", "poly": "2z+1"}),
    ("err_zero_polynomial", "/v1/companion", {"kind": "pencil", "poly": "0"}),
    ("err_out_of_range", "/v1/companion", {"kind": "mandelbrot", "n": 9}),
    ("err_construction", "/v1/exam/unimodular", {"seed": 1, "max_height": 0}),
    ("err_not_found", "/v1/companion", {"kind": "min_height", "poly": "z^2-5z"}),
    ("err_no_valid_option", "/v1/exam/mc", {"true_value": 1.0, "options": [1.2, 1.8]}),
    ("err_invalid_argument", "/v1/factor", {"kind": "bogus", "matrix": EQ2}),
    ("err_bad_request", "/v1/det", {"method": "schur"}),
    ("err_unknown_route", "/v1/nope", {}),
    ("health", "/v1/health", None),
]


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def fetch(base, route, body):
    data = None if body is None else json.dumps(body).encode()
    req = urllib.request.Request(base + route, data=data, method="GET" if body is None else "POST",
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as r:
            return r.status, json.loads(r.read())
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("binary")
    ap.add_argument("out_dir")
    args = ap.parse_args()
    port = free_port()
    proc = subprocess.Popen([args.binary, "serve", "--port", str(port)], stderr=subprocess.DEVNULL)
    base = f"http://127.0.0.1:{port}"
    try:
        for _ in range(100):
            try:
                fetch(base, "/v1/health", None)
                break
            except OSError:
                time.sleep(0.05)
        os.makedirs(args.out_dir, exist_ok=True)
        for k, (name, route, body) in enumerate(CASES, 1):
            status, resp = fetch(base, route, body)
            doc = {"route": route, "method": "GET" if body is None else "POST", "request": body,
                   "status": status, "response": resp}
            with open(os.path.join(args.out_dir, f"{k:02d}_{name}.json"), "w", encoding="utf-8") as f:
                json.dump(doc, f, indent=2, ensure_ascii=False)
                f.write("\n")
            print(f"{k:02d} {name}: {status}")
    finally:
        proc.terminate()
        proc.wait()


if __name__ == "__main__":
    sys.exit(main())
