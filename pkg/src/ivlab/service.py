"""HTTP face of the command handlers.

Each endpoint wraps one handler from commands.py: the request model
mirrors the handler's arguments, the response body is the handler's
payload unchanged.  A payload produced by an unusable request comes back
with status 400; audit findings are a successful response (status 200)
whose diagnostics carry the failures.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import commands


class ValueRequest(BaseModel):
    ring: str
    valuation: str
    ideal: str


class ClosureRequest(BaseModel):
    ring: str
    op: str
    ideal: str
    n: int | None = None


class ChainRequest(BaseModel):
    ring: str
    valuation: str | None = None
    chain: str | None = None
    ideal: str | None = None
    n: int = 6


class IdealRequest(BaseModel):
    ring: str
    ideal: str


class CheckAxiomsRequest(BaseModel):
    ring: str
    valuation: str
    samples: int = 100
    seed: int = 0


class RoundtripRequest(BaseModel):
    ring: str
    valuation: str | None = None
    chain: str | None = None
    samples: int = 60
    seed: int = 0
    levels: int = 8


class FiniteTypeRequest(BaseModel):
    ring: str
    family: str
    samples: int = 30
    seed: int = 0


class RangeBoundRequest(BaseModel):
    ring: str
    valuation: str
    samples: int = 60
    seed: int = 0


class EquivalencesRequest(BaseModel):
    ring: str
    chain: str
    samples: int = 40
    seed: int = 0


def _respond(payload, code):
    status = 400 if code == commands.USAGE else 200
    return JSONResponse(content=payload, status_code=status)


def create_app() -> FastAPI:
    app = FastAPI(title="ivlab", version=commands.VERSION)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": commands.VERSION}

    @app.post("/value")
    def value(req: ValueRequest):
        return _respond(*commands.run_value(req.ring, req.valuation,
                                            req.ideal))

    @app.post("/closure")
    def closure(req: ClosureRequest):
        return _respond(*commands.run_closure(req.ring, req.op, req.ideal,
                                              req.n))

    @app.post("/chain")
    def chain(req: ChainRequest):
        return _respond(*commands.run_chain(req.ring, req.valuation,
                                            req.chain, req.ideal, req.n))

    @app.post("/decompose")
    def decompose(req: IdealRequest):
        return _respond(*commands.run_decompose(req.ring, req.ideal))

    @app.post("/min-primes")
    def min_primes(req: IdealRequest):
        return _respond(*commands.run_min_primes(req.ring, req.ideal))

    @app.post("/check-axioms")
    def check_axioms(req: CheckAxiomsRequest):
        return _respond(*commands.run_check_axioms(req.ring, req.valuation,
                                                   req.samples, req.seed))

    @app.post("/roundtrip")
    def roundtrip(req: RoundtripRequest):
        return _respond(*commands.run_roundtrip(req.ring, req.valuation,
                                                req.chain, req.samples,
                                                req.seed, req.levels))

    @app.post("/finite-type")
    def finite_type(req: FiniteTypeRequest):
        return _respond(*commands.run_finite_type(req.ring, req.family,
                                                  req.samples, req.seed))

    @app.post("/range-bound")
    def range_bound(req: RangeBoundRequest):
        return _respond(*commands.run_range_bound(req.ring, req.valuation,
                                                  req.samples, req.seed))

    @app.post("/equivalences")
    def equivalences(req: EquivalencesRequest):
        return _respond(*commands.run_equivalences(req.ring, req.chain,
                                                   req.samples, req.seed))

    return app


app = create_app()
