"""Compiled-vs-pure kernel benchmark.

Runs the hot verification workloads under both backends and prints a
comparison:

    python3 benchmarks/bench_kernels.py

The pure backend is forced in a child process via REVLAB_PURE_PYTHON=1, so
both measurements use identical code paths above the kernel boundary.
"""

import json
import os
import subprocess
import sys
import time


def _measure():
    from revlab import kernels
    from revlab.operators import RevisionOperator, all_policies
    from revlab.prop import Signature
    from revlab.states import enumerate_states
    from revlab.verify import check_postulate, verify_equivalence

    sig = Signature.of("a b")
    states = enumerate_states(sig, "faithful").states
    results = {"backend": kernels.BACKEND}

    t0 = time.perf_counter()
    reps = 40
    for _ in range(reps):
        for st in states:
            kernels.bel_table(st.order.levels, st.scope, st.bel, 16)
    results["bel_table"] = (time.perf_counter() - t0) / reps

    t0 = time.perf_counter()
    reps = 10
    rules = [(o, s) for o in (0, 1, 2) for s in (0, 1, 2)]
    for _ in range(reps):
        for st in states:
            for alpha in range(16):
                for orule, srule in rules:
                    kernels.posterior(
                        st.order.levels, st.scope, st.bel, alpha, orule, srule, 1
                    )
    results["posterior"] = (time.perf_counter() - t0) / reps

    t0 = time.perf_counter()
    uni = enumerate_states(sig, "faithful")
    gc_uni = enumerate_states(sig, "faithful", global_consistency=True)
    for policy in all_policies():
        op = RevisionOperator("dl", policy)
        assert verify_equivalence(op, gc_uni, "P11").holds
        assert verify_equivalence(op, gc_uni, "P13a").holds
    results["equivalences"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for policy in all_policies():
        op = RevisionOperator("dl", policy)
        for pid in (f"DL{i}" for i in range(1, 8)):
            assert check_postulate(op, uni, pid).holds
    results["dl_suite"] = time.perf_counter() - t0

    return results


LABELS = {
    "bel_table": "belief tables, 566 states x 16 classes",
    "posterior": "posteriors, 566 states x 16 classes x 9 policies",
    "equivalences": "two iteration-theorem suites x 9 policies",
    "dl_suite": "full DL postulate suite x 9 policies",
}


def main():
    if "--single" in sys.argv:
        print(json.dumps(_measure()))
        return

    rows = []
    for force_pure in (False, True):
        env = dict(os.environ)
        env.pop("REVLAB_PURE_PYTHON", None)
        if force_pure:
            env["REVLAB_PURE_PYTHON"] = "1"
        out = subprocess.run(
            [sys.executable, __file__, "--single"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        rows.append(json.loads(out.stdout))

    fast, pure = rows
    if fast["backend"] == pure["backend"]:
        print(f"only the {pure['backend']} backend is available; no comparison")
    print(f"{'workload':52s} {fast['backend']:>10s} {pure['backend']:>10s} {'speedup':>8s}")
    for key, label in LABELS.items():
        ratio = pure[key] / fast[key] if fast[key] else float("inf")
        print(f"{label:52s} {fast[key] * 1e3:8.1f}ms {pure[key] * 1e3:8.1f}ms {ratio:7.1f}x")


if __name__ == "__main__":
    main()
