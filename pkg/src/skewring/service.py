"""HTTP front end: the analysis handlers behind a FastAPI app.

Every endpoint wraps the same handler functions the CLI uses; responses
carry the report dict plus the exit code the CLI would have returned.
"""

from fastapi import FastAPI, Query
from pydantic import BaseModel, Field

from . import handlers


class VerifyRequest(BaseModel):
    input: dict


class AnalyzeRequest(BaseModel):
    input: dict
    carrier: str = "gf:2"
    bruteforce_cap: int = Field(14, ge=1)
    bisection_cap: int = Field(16, ge=1)
    seed: int = 0


class CorpusRequest(BaseModel):
    count: int = Field(12, ge=1, le=500)
    seed: int = 0
    bruteforce_cap: int = Field(14, ge=1)


class Report(BaseModel):
    exit_code: int
    report: dict


app = FastAPI(
    title="skewring",
    description="Skew inverse semigroup rings, groupoid convolution algebras, "
    "and exact simplicity tests",
)


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/verify", response_model=Report)
def verify(req: VerifyRequest):
    report, code = handlers.run_verify(req.input)
    return Report(exit_code=code, report=report)


@app.post("/analyze", response_model=Report)
def analyze(req: AnalyzeRequest):
    report, code = handlers.run_analyze(
        req.input,
        carrier_name=req.carrier,
        bruteforce_cap=req.bruteforce_cap,
        bisection_cap=req.bisection_cap,
        seed=req.seed,
    )
    return Report(exit_code=code, report=report)


@app.get("/gallery")
def gallery_index():
    return {"entries": list(handlers.GALLERY)}


@app.get("/gallery/{name}", response_model=Report)
def gallery(
    name: str,
    carrier: str = Query("gf:2"),
    window: int = Query(4, ge=1),
    bruteforce_cap: int = Query(14, ge=1),
    bisection_cap: int = Query(16, ge=1),
    seed: int = Query(0),
):
    report, code = handlers.run_gallery(
        name,
        carrier_name=carrier,
        window=window,
        bruteforce_cap=bruteforce_cap,
        bisection_cap=bisection_cap,
        seed=seed,
    )
    return Report(exit_code=code, report=report)


@app.post("/corpus", response_model=Report)
def corpus(req: CorpusRequest):
    report, code = handlers.run_corpus(
        req.count, req.seed, bruteforce_cap=req.bruteforce_cap
    )
    return Report(exit_code=code, report=report)
