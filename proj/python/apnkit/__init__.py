"""Python access to the apnkit core.

Polynomials travel as text in the same syntax the CLI accepts
("x^17 + 0x3*x^11", "x^2 + x*y + y^2"). Fields are "m" or "m:0xMOD".
"""

import json

from . import _core
from ._core import ApnkitError, rodier_check, phi_j, apn_degrees

__version__ = _core.version

__all__ = [
    "ApnkitError",
    "apn_degrees",
    "factor",
    "field_info",
    "is_apn",
    "phi",
    "phi_j",
    "rodier_check",
    "run_cli",
    "scan_degrees",
    "verdict",
    "verify_lemma1",
    "verify_lemma2",
    "verify_theorem",
]


def field_info(field="1"):
    return json.loads(_core.field_info(field))


def phi(f, field="1"):
    """(phi as text, total degree) for the S-box polynomial f."""
    return _core.phi(f, field)


def factor(poly, field="1", seed=0):
    return json.loads(_core.factor(poly, field, seed))


def verdict(poly, field="1", seed=0):
    return json.loads(_core.verdict(poly, field, seed))


def is_apn(f, n, field="1", verdict_only=False):
    return json.loads(_core.is_apn(f, n, field, verdict_only))


def verify_lemma1(k=5, threads=1):
    return json.loads(_core.verify_lemma1(k, threads))


def verify_lemma2(n=101, threads=1):
    return json.loads(_core.verify_lemma2(n, threads))


def scan_degrees(d_max=32, threads=1):
    return json.loads(_core.scan_degrees(d_max, threads))


def verify_theorem(name, k=4, samples=50, seed=0, d=None, branch="both", threads=1):
    return json.loads(_core.verify_theorem(name, k, samples, seed, d, branch, threads))


def run_cli(*args):
    """Runs the command-line tool in process: (exit code, report dict or None, stderr)."""
    code, out, err = _core.run_cli([str(a) for a in args])
    return code, (json.loads(out) if out.strip() else None), err
