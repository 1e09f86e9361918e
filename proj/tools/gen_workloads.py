#!/usr/bin/env python3
# Copyright 2026 The qfab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generate the benchmark workload suite as OpenQASM 2 files.

Every circuit is expanded to the gate set the qfab parser accepts
(h, x, s, t, tdg, rx, ry, rz, cx, ...). Output is deterministic.
"""

import argparse
import math
import pathlib
import random


class Circuit:
    def __init__(self, n):
        self.n = n
        self.lines = []

    def g(self, name, *qubits, params=()):
        p = "(" + ",".join(f"{x:.17g}" for x in params) + ")" if params else ""
        args = ",".join(f"q[{q}]" for q in qubits)
        self.lines.append(f"{name}{p} {args};")

    def cp(self, theta, a, b):
        self.g("rz", a, params=(theta / 2,))
        self.g("cx", a, b)
        self.g("rz", b, params=(-theta / 2,))
        self.g("cx", a, b)
        self.g("rz", b, params=(theta / 2,))

    def cry(self, theta, c, t):
        self.g("ry", t, params=(theta / 2,))
        self.g("cx", c, t)
        self.g("ry", t, params=(-theta / 2,))
        self.g("cx", c, t)

    def rzz(self, theta, a, b):
        self.g("cx", a, b)
        self.g("rz", b, params=(theta,))
        self.g("cx", a, b)

    def ccx(self, a, b, c):
        self.g("h", c)
        self.g("cx", b, c)
        self.g("tdg", c)
        self.g("cx", a, c)
        self.g("t", c)
        self.g("cx", b, c)
        self.g("tdg", c)
        self.g("cx", a, c)
        self.g("t", b)
        self.g("t", c)
        self.g("h", c)
        self.g("cx", a, b)
        self.g("t", a)
        self.g("tdg", b)
        self.g("cx", a, b)

    def qft(self, qubits, inverse=False):
        ops = []
        m = len(qubits)
        for i in range(m):
            ops.append(("h", qubits[i]))
            for j in range(i + 1, m):
                ops.append(("cp", math.pi / 2 ** (j - i), qubits[j], qubits[i]))
        if inverse:
            ops = [(o[0], -o[1], o[2], o[3]) if o[0] == "cp" else o for o in reversed(ops)]
        for o in ops:
            if o[0] == "h":
                self.g("h", o[1])
            else:
                self.cp(o[1], o[2], o[3])

    def text(self, comment):
        head = ["// Copyright 2026 The qfab Authors",
                "// SPDX-License-Identifier: Apache-2.0",
                "OPENQASM 2.0;", 'include "qelib1.inc";', f"// {comment}",
                f"qreg q[{self.n}];"]
        return "\n".join(head + self.lines) + "\n"


def ghz(n):
    c = Circuit(n)
    c.g("h", 0)
    for i in range(n - 1):
        c.g("cx", i, i + 1)
    return c


def bernstein_vazirani(n, rng):
    c = Circuit(n)
    anc = n - 1
    secret = [rng.randint(0, 1) for _ in range(n - 1)]
    if not any(secret):
        secret[0] = 1
    c.g("x", anc)
    for q in range(n):
        c.g("h", q)
    for q, bit in enumerate(secret):
        if bit:
            c.g("cx", q, anc)
    for q in range(n - 1):
        c.g("h", q)
    return c


def qft(n):
    c = Circuit(n)
    for q in range(n):
        c.g("h", q)
        c.g("rz", q, params=(0.1 * (q + 1),))
    c.qft(list(range(n)))
    return c


def qpe(n):
    c = Circuit(n)
    counting = list(range(n - 1))
    target = n - 1
    phase = 2 * math.pi * 0.3125
    c.g("x", target)
    for q in counting:
        c.g("h", q)
    for k, q in enumerate(counting):
        c.cp(phase * 2**k, q, target)
    c.qft(counting, inverse=True)
    return c


def amplitude_estimation(n):
    c = Circuit(n)
    counting = list(range(n - 1))
    target = n - 1
    theta = 2 * math.asin(math.sqrt(0.3))
    c.g("ry", target, params=(theta,))
    for q in counting:
        c.g("h", q)
    for k, q in enumerate(counting):
        c.cry(2 * theta * 2**k, q, target)
    c.qft(counting, inverse=True)
    return c


def w_state(n):
    c = Circuit(n)
    c.g("x", 0)
    for i in range(n - 1):
        c.cry(2 * math.acos(math.sqrt(1 / (n - i))), i, i + 1)
        c.g("cx", i + 1, i)
    return c


def vqe(n, rng, layers=3):
    c = Circuit(n)
    for layer in range(layers + 1):
        for q in range(n):
            c.g("ry", q, params=(rng.uniform(-math.pi, math.pi),))
            c.g("rz", q, params=(rng.uniform(-math.pi, math.pi),))
        if layer == layers:
            break
        for q in range(n - 1):
            c.g("cx", q, q + 1)
    return c


def shor_code(n):
    # Nine-qubit code: encode, an error, syndrome extraction on two
    # ancillas, decode with Toffoli correction.
    c = Circuit(n)
    a0, a1 = 9, 10
    c.g("ry", 0, params=(0.7,))
    for t in (3, 6):
        c.g("cx", 0, t)
    for b in (0, 3, 6):
        c.g("h", b)
        c.g("cx", b, b + 1)
        c.g("cx", b, b + 2)
    c.g("x", 4)
    c.g("cx", 3, a0)
    c.g("cx", 4, a0)
    c.g("cx", 4, a1)
    c.g("cx", 5, a1)
    for b in (0, 3, 6):
        c.g("cx", b, b + 1)
        c.g("cx", b, b + 2)
        c.ccx(b + 2, b + 1, b)
        c.g("h", b)
    c.g("cx", 0, 3)
    c.g("cx", 0, 6)
    c.ccx(6, 3, 0)
    return c


def multiplier(n):
    # 2-bit x 2-bit schoolbook multiply into a ripple-carry accumulator.
    c = Circuit(n)
    a = [0, 1]
    b = [2, 3]
    prod = [4, 5, 6, 7]
    carry = [8, 9, 10, 11]
    scratch = [12, 13, 14]
    for q in a + b:
        c.g("h", q)
    for i, qa in enumerate(a):
        for j, qb in enumerate(b):
            s = scratch[(i + j) % len(scratch)]
            c.ccx(qa, qb, s)
            k = i + j
            c.ccx(s, prod[k], carry[k])
            c.g("cx", s, prod[k])
            if k + 1 < len(prod):
                c.g("cx", carry[k], prod[k + 1])
            c.ccx(qa, qb, s)
    return c


def qaoa(n, rng, p=2):
    edges = set()
    order = list(range(n))
    while len(edges) < 3 * n // 2:
        rng.shuffle(order)
        for i in range(0, n - 1, 2):
            a, b = sorted((order[i], order[i + 1]))
            edges.add((a, b))
            if len(edges) >= 3 * n // 2:
                break
    c = Circuit(n)
    for q in range(n):
        c.g("h", q)
    for _ in range(p):
        gamma = rng.uniform(0, math.pi)
        beta = rng.uniform(0, math.pi / 2)
        for a, b in sorted(edges):
            c.rzz(gamma, a, b)
        for q in range(n):
            c.g("rx", q, params=(2 * beta,))
    return c


def suite(seed):
    rng = random.Random(seed)
    return {
        "ghz_10": (ghz(10), "GHZ state preparation"),
        "bv_14": (bernstein_vazirani(14, rng), "Bernstein-Vazirani, 13-bit secret"),
        "qft_10": (qft(10), "quantum Fourier transform"),
        "qpe_8": (qpe(8), "phase estimation, 7 counting qubits"),
        "ae_10": (amplitude_estimation(10), "amplitude estimation, 9 counting qubits"),
        "wstate_8": (w_state(8), "W state preparation"),
        "vqe_10": (vqe(10, rng), "hardware-efficient ansatz, 3 layers"),
        "seca_11": (shor_code(11), "nine-qubit code with syndrome ancillas"),
        "mult_15": (multiplier(15), "2x2-bit multiplier"),
        "qaoa_12": (qaoa(12, rng), "QAOA MaxCut, p=2"),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="workloads", type=pathlib.Path)
    ap.add_argument("--seed", default=7, type=int)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, (circ, comment) in suite(args.seed).items():
        (args.out / f"{name}.qasm").write_text(circ.text(comment))


if __name__ == "__main__":
    main()
