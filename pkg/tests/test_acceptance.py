"""Acceptance criteria, one PASS/FAIL line each.

Run with pytest, or directly with ``python3 tests/test_acceptance.py`` for
just the summary lines. Timed criteria run their work in a fresh
interpreter so that no cache warmed by earlier tests hides the cold cost.
"""

import ast
import subprocess
import sys
import time
from fractions import Fraction as F
from pathlib import Path

from lagrecon.convexity import compare_lengths, convexity_interval, interval_table
from lagrecon.fundamental import certify_roots, named_root
from lagrecon.stencil import (Stencil, Subdivision, is_positive_subdivision, stencils_of_width,
                              subdivisions_up_to)
from lagrecon.verify import (check_closed_forms, check_consistency, check_convexity,
                             check_identities, check_poles)
from lagrecon.weights import oracle_weights_at, weights_at

HALF = F(1, 2)
_RESULTS = []


def _report(capsys, name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} {name}" + (f"  ({detail})" if detail else "")
    _RESULTS.append(line)
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def _cold(code):
    """Run ``code`` in a fresh interpreter; return (stdout, seconds spent inside)."""
    wrapped = ("import time; _t = time.perf_counter()\n" + code +
               "\nprint('SECONDS', time.perf_counter() - _t)")
    proc = subprocess.run([sys.executable, "-c", wrapped], capture_output=True, text=True,
                          check=True)
    lines = proc.stdout.strip().splitlines()
    return lines[:-1], float(lines[-1].split()[1])


def _stencils(lo, hi):
    for M in range(lo, hi + 1):
        yield from stencils_of_width(M)


def _failures(results):
    return [f"{name}: {why}" for name, (ok, why) in results if not ok]


def test_c01_negative_weight_value(capsys):
    out, secs = _cold(
        "from fractions import Fraction as F\n"
        "from lagrecon.stencil import Subdivision\n"
        "from lagrecon.weights import sigma\n"
        "print(sigma(Subdivision.of(3, 4, 4), 4)(F(-1, 2)))")
    got = F(out[0])
    ok = got == F(-3, 770) and secs < 1
    _report(capsys, "C1 sigma_{3,4,4,4}(-1/2) = -3/770, < 1 s", ok,
            f"computed {got}, {secs:.3f} s")
    assert got == F(-3, 770)
    assert secs < 1


def test_c02_integer_roots_examples(capsys):
    t = time.perf_counter()
    s34, s33 = Stencil(3, 4), Stencil(3, 3)
    r1, r0 = named_root(s34, -3, 1), named_root(s34, 4, 0)
    found = (r1.is_exact and r1.lo == 1, r0.is_exact and r0.lo == 0)
    none33 = all(certify_roots(s33, ell).integer_roots == () for ell in s33.points)
    secs = time.perf_counter() - t
    ok = all(found) and none33 and secs < 5
    _report(capsys, "C2 integer roots +1 and 0 on (3,4), none on (3,3), < 5 s", ok,
            f"{secs:.2f} s")
    assert ok


def _integer_root_survey(max_m):
    bad = []
    for s in _stencils(1, max_m):
        seen = set()
        for ell in s.points:
            seen |= {(ell, n) for n in certify_roots(s, ell).integer_roots}
        if s.M % 2 == 0:
            want = set()
        else:
            want = {(-s.m_minus, (s.m_plus - s.m_minus + 1) // 2),
                    (s.m_plus, (s.m_plus - s.m_minus - 1) // 2)}
        if seen != want:
            bad.append(f"{s.label()}: {sorted(seen)} != {sorted(want)}")
    return bad


def test_c03_integer_root_pattern(capsys):
    here = str(Path(__file__).parent)
    out, secs = _cold(
        f"import sys; sys.path.insert(0, {here!r})\n"
        "from test_acceptance import _integer_root_survey\n"
        "print(repr(_integer_root_survey(12)))")
    bad = ast.literal_eval(out[0])
    ok = not bad and secs < 120
    _report(capsys, "C3 integer roots: none for even M, two edge roots for odd M, M <= 12",
            ok, f"{secs:.1f} s" + (f"; {bad[:3]}" if bad else ""))
    assert not bad
    assert secs < 120


def test_c04_weights_at_half(capsys):
    cases = {(1, 1, 1): [F(1, 3), F(2, 3)], (2, 2, 2): [F(1, 10), F(3, 5), F(3, 10)]}
    ok = True
    for args, want in cases.items():
        sd = Subdivision.of(*args)
        got = weights_at(sd, HALF)
        ok &= got == want == oracle_weights_at(sd, HALF, "lambda") \
            == oracle_weights_at(sd, HALF, "alpha")
    _report(capsys, "C4 weights at 1/2 match the linear-system oracle", ok)
    assert ok


def test_c05_identities(capsys):
    t = time.perf_counter()
    res = [(s.label(), check_identities(s.m_minus, s.m_plus)) for s in _stencils(2, 10)]
    secs = time.perf_counter() - t
    bad = _failures(res)
    ok = not bad and secs < 60
    _report(capsys, f"C5 identities (a)-(e), 2 <= M <= 10 ({len(res)} stencils)", ok,
            f"{secs:.1f} s" + (f"; {bad[:3]}" if bad else ""))
    assert ok


def test_c06_pair_and_three_paths(capsys):
    res = [(s.label(), check_closed_forms(s.m_minus, s.m_plus)) for s in _stencils(0, 10)]
    bad = _failures(res)
    _report(capsys, f"C6 pair property and three alpha_R1 paths, M <= 10 ({len(res)} stencils)",
            not bad, "; ".join(bad[:3]))
    assert not bad


def test_c07_root_brackets(capsys):
    bad = []
    n = 0
    for s in _stencils(1, 10):
        for ell in s.points:
            n += 1
            cert = certify_roots(s, ell)
            if cert.sturm_count != s.M:
                bad.append(f"{s.label()} ell={ell}: count {cert.sturm_count}")
            for w, iv in zip(cert.windows, cert.roots):
                if not (w - HALF <= iv.lo <= iv.hi <= w + HALF) or w == ell:
                    bad.append(f"{s.label()} ell={ell}: window {w}")
    _report(capsys, f"C7 Sturm count = M and one root per window, M <= 10 ({n} polynomials)",
            not bad, "; ".join(bad[:3]))
    assert not bad


def test_c08_consistency(capsys):
    sds = subdivisions_up_to(8)
    res = [(sd.label(), check_consistency(sd.m_minus, sd.m_plus, sd.ks)) for sd in sds]
    bad = _failures(res)
    _report(capsys, f"C8 sum of weights = 1 and error-cancellation, M <= 8 ({len(sds)} cases)",
            not bad, "; ".join(bad[:3]))
    assert not bad


def test_c09_poles(capsys):
    sds = subdivisions_up_to(8)
    res = [(sd.label(), check_poles(sd.m_minus, sd.m_plus, sd.ks)) for sd in sds]
    bad = _failures(res)
    _report(capsys, f"C9 no poles at half-points, all poles real, M <= 8 ({len(sds)} cases)",
            not bad, "; ".join(bad[:3]))
    assert not bad


def test_c10_convexity(capsys):
    sds = [sd for sd in subdivisions_up_to(10) if is_positive_subdivision(sd)]
    bad = []
    for sd in sds:
        ci = convexity_interval(sd)
        if not ci.contains_half():
            bad.append(f"{sd.label()}: 1/2 outside")
        ok, why = check_convexity(sd.m_minus, sd.m_plus, sd.ks)
        if not ok:
            bad.append(f"{sd.label()}: {why}")
    rows = {r.M: r.interval for r in interval_table(12)}
    # lengths drop within each parity; even M beats both odd neighbours
    for M in range(2, 11):
        if compare_lengths(rows[M + 2], rows[M]) >= 0:
            bad.append(f"length M={M + 2} not below M={M}")
    for M in range(2, 13, 2):
        for nb in (M - 1, M + 1):
            if nb in rows and compare_lengths(rows[M], rows[nb]) <= 0:
                bad.append(f"length M={M} not above M={nb}")
    _report(capsys, f"C10 certified convexity ({len(sds)} positive subdivisions) and "
            "length trend, M <= 12", not bad, "; ".join(bad[:3]))
    assert not bad


def test_c11_verify_runtime(capsys):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "lagrecon", "verify", "--suite", "all",
                           "--max-m", "8"], capture_output=True, text=True)
    secs = time.perf_counter() - t
    last = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else ""
    ok = proc.returncode == 0 and secs < 300
    _report(capsys, "C11 verify --suite all --max-m 8 under 5 min", ok, f"{last}, {secs:.0f} s")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
