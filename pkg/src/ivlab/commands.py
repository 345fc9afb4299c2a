"""Command handlers shared by the command line tool and the HTTP service.

Every handler takes the raw text inputs, parses them, and returns
(payload, exit_code).  The payload always carries the same envelope:
command, canonical ring name, the inputs as given, the result, a list of
diagnostics, and the package version.  Exit code 0 means the command ran
and found nothing wrong, 1 means a law audit or round trip produced
findings, and 2 means the invocation itself was unusable.
"""

from __future__ import annotations

import random

from .cuts import ValuationRing
from .dedekind import DedekindRing
from .errors import IvlabError, UsageError
from .extnat import fmt_ext
from .families import chain_equivalences, is_finite_type, range_bound
from .parser import (parse_chain, parse_family, parse_ideal, parse_module,
                     parse_op, parse_ring, parse_valuation)
from .semistar import (chain_from_prime_data, chain_from_valuation,
                       op_equals, prime_data_from_chain, valuation_from_chain)
from .valuations import check_axioms

VERSION = "0.1.0"

OK, FINDINGS, USAGE = 0, 1, 2


def _payload(command: str, ring, inputs: dict, result, diagnostics):
    return {
        "command": command,
        "ring": ring.name() if ring is not None else "",
        "inputs": {k: v for k, v in inputs.items() if v is not None},
        "result": result,
        "diagnostics": diagnostics,
        "version": VERSION,
    }


def _run(command: str, inputs: dict, body):
    """Parse-and-compute wrapper: usage failures become the error payload."""
    try:
        return body()
    except IvlabError as err:
        payload = _payload(command, None, inputs, None,
                           [{"law": "usage", "status": "fail",
                             "witness": str(err)}])
        return payload, USAGE


def _require(**named):
    for key, value in named.items():
        if value is None:
            raise UsageError(f"missing required input: {key}")


# ---------------------------------------------------------------------------
# evaluation commands
# ---------------------------------------------------------------------------

def run_value(ring: str, valuation: str, ideal: str):
    inputs = {"valuation": valuation, "ideal": ideal}

    def body():
        _require(ring=ring, valuation=valuation, ideal=ideal)
        r = parse_ring(ring)
        nu = parse_valuation(valuation, r)
        module = parse_ideal(ideal, r)
        result = fmt_ext(nu.value(module))
        return _payload("value", r, inputs, result, []), OK

    return _run("value", inputs, body)


def run_closure(ring: str, op: str, ideal: str, n: int | None = None):
    inputs = {"op": op, "ideal": ideal, "n": n}

    def body():
        _require(ring=ring, op=op, ideal=ideal)
        r = parse_ring(ring)
        operation = parse_op(op, r, default_level=n)
        module = parse_module(ideal, r)
        result = str(operation.closure(module))
        return _payload("closure", r, inputs, result, []), OK

    return _run("closure", inputs, body)


def run_chain(ring: str, valuation: str | None = None,
              chain: str | None = None, ideal: str | None = None,
              n: int = 6):
    inputs = {"valuation": valuation, "chain": chain, "ideal": ideal, "n": n}

    def body():
        r = parse_ring(ring)
        if (valuation is None) == (chain is None):
            raise UsageError("pass exactly one of valuation or chain")
        if valuation is not None:
            built = chain_from_valuation(parse_valuation(valuation, r))
        else:
            built = parse_chain(chain, r)
        cap = built.stabilization_cap()
        result = {
            "chain": built.name(),
            "members": [built.member(k).name() for k in range(max(n, 1))],
            "stabilization_cap": "none" if cap is None else cap,
        }
        if ideal is not None:
            module = parse_ideal(ideal, r)
            result["value"] = fmt_ext(valuation_from_chain(built).value(module))
        return _payload("chain", r, inputs, result, []), OK

    return _run("chain", inputs, body)


def run_decompose(ring: str, ideal: str):
    inputs = {"ideal": ideal}

    def body():
        _require(ring=ring, ideal=ideal)
        r = parse_ring(ring)
        module = parse_ideal(ideal, r)
        if isinstance(r, DedekindRing):
            if not module.is_proper_ideal():
                raise UsageError("decomposition needs a proper nonzero ideal")
            table = dict(zip(r.primes, module.exps))
            pairs = [(str(r.module({p: table[p]})), p)
                     for p in module.support()]
        elif isinstance(r, ValuationRing):
            if not module.is_proper_ideal():
                raise UsageError("decomposition needs a proper nonzero ideal")
            # ideals of a valuation model are irreducible, hence primary
            pairs = [(str(module), str(module.radical_prime_ref()))]
        else:
            pairs = [(str(c), str(p)) for c, p in module.primary_decomposition()]
        result = [{"component": c, "prime": p} for c, p in pairs]
        return _payload("decompose", r, inputs, result, []), OK

    return _run("decompose", inputs, body)


def run_min_primes(ring: str, ideal: str):
    inputs = {"ideal": ideal}

    def body():
        _require(ring=ring, ideal=ideal)
        r = parse_ring(ring)
        module = parse_ideal(ideal, r)
        result = [str(p) for p in module.minimal_primes()]
        return _payload("min-primes", r, inputs, result, []), OK

    return _run("min-primes", inputs, body)


# ---------------------------------------------------------------------------
# audit commands
# ---------------------------------------------------------------------------

def run_check_axioms(ring: str, valuation: str, samples: int = 100,
                     seed: int = 0):
    inputs = {"valuation": valuation, "samples": samples, "seed": seed}

    def body():
        _require(ring=ring, valuation=valuation)
        r = parse_ring(ring)
        nu = parse_valuation(valuation, r)
        diagnostics = check_axioms(nu, random.Random(seed), samples)
        failed = any(d["status"] == "fail" for d in diagnostics)
        result = "fail" if failed else "pass"
        code = FINDINGS if failed else OK
        return _payload("check-axioms", r, inputs, result, diagnostics), code

    return _run("check-axioms", inputs, body)


def run_roundtrip(ring: str, valuation: str | None = None,
                  chain: str | None = None, samples: int = 60,
                  seed: int = 0, levels: int = 8):
    """Valuation -> chain -> valuation, or chain -> prime data -> chain."""
    inputs = {"valuation": valuation, "chain": chain,
              "samples": samples, "seed": seed, "levels": levels}

    def body():
        r = parse_ring(ring)
        if (valuation is None) == (chain is None):
            raise UsageError("pass exactly one of valuation or chain")
        rng = random.Random(seed)
        diagnostics = []
        if valuation is not None:
            nu = parse_valuation(valuation, r)
            back = valuation_from_chain(chain_from_valuation(nu))
            mismatches = []
            for module in r.sample_ideals(rng, samples):
                if not module.is_integral():
                    continue
                got, want = back.value(module), nu.value(module)
                if got != want:
                    mismatches.append(
                        f"nu({module}) = {fmt_ext(want)} but the chain "
                        f"valuation gives {fmt_ext(got)}")
            entry = {"law": "valuation-chain-round-trip",
                     "status": "fail" if mismatches else "pass"}
            if mismatches:
                entry["witness"] = mismatches[0]
            diagnostics.append(entry)
            result = {"chain": chain_from_valuation(nu).name()}
        else:
            built = parse_chain(chain, r)
            table = prime_data_from_chain(built)
            rebuilt = chain_from_prime_data(r, table)
            witness = None
            for k in range(levels):
                same, via = op_equals(built.member(k), rebuilt.member(k), rng)
                if not same:
                    witness = f"member {k}: {via}"
                    break
            entry = {"law": "chain-prime-data-round-trip",
                     "status": "fail" if witness else "pass"}
            if witness:
                entry["witness"] = witness
            diagnostics.append(entry)
            result = {"prime_data": {str(ref): fmt_ext(v)
                                     for ref, v in table.items()},
                      "rebuilt": rebuilt.name()}
        failed = any(d["status"] == "fail" for d in diagnostics)
        code = FINDINGS if failed else OK
        return _payload("roundtrip", r, inputs, result, diagnostics), code

    return _run("roundtrip", inputs, body)


def run_finite_type(ring: str, family: str, samples: int = 30, seed: int = 0):
    inputs = {"family": family, "samples": samples, "seed": seed}

    def body():
        _require(ring=ring, family=family)
        r = parse_ring(ring)
        fam = parse_family(family, r)
        report = is_finite_type(fam, random.Random(seed), samples)
        diagnostics = [{"law": label, "status": "info", "witness": text}
                       for label, text in report.diagnostics]
        result = {"verdict": report.verdict,
                  "witness": "none" if report.witness is None
                             else str(report.witness)}
        return _payload("finite-type", r, inputs, result, diagnostics), OK

    return _run("finite-type", inputs, body)


def run_range_bound(ring: str, valuation: str, samples: int = 60,
                    seed: int = 0):
    inputs = {"valuation": valuation, "samples": samples, "seed": seed}

    def body():
        _require(ring=ring, valuation=valuation)
        r = parse_ring(ring)
        nu = parse_valuation(valuation, r)
        report = range_bound(nu, random.Random(seed), samples)
        result = {
            "realized": list(report.realized),
            "finite_count": report.finite_count,
            "bound": report.bound,
            "verdict": report.verdict,
            "witness_primes": [{"value": v, "prime": p}
                               for v, p in report.witness_primes],
        }
        diagnostics = []
        if not report.verdict:
            diagnostics.append({
                "law": "finite-values-within-rank-bound", "status": "fail",
                "witness": f"{report.finite_count} finite values exceed "
                           f"the bound {report.bound}"})
        code = FINDINGS if not report.verdict else OK
        return _payload("range-bound", r, inputs, result, diagnostics), code

    return _run("range-bound", inputs, body)


def run_equivalences(ring: str, chain: str, samples: int = 40, seed: int = 0):
    """The four finite-type characterizations of a standard chain."""
    inputs = {"chain": chain, "samples": samples, "seed": seed}

    def body():
        _require(ring=ring, chain=chain)
        r = parse_ring(ring)
        built = parse_chain(chain, r)
        report = chain_equivalences(built, random.Random(seed), samples)
        result = report.as_dict()
        return _payload("equivalences", r, inputs, result, []), OK

    return _run("equivalences", inputs, body)
