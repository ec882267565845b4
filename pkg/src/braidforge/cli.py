"""Command-line front end: a thin client of the verification service.

Every subcommand builds one request, sends it to the FastAPI app (in
process by default, or to a running server via --server), renders the
returned report as text and optionally writes the raw report JSON.  Exit
status is 0 when every check passed, 1 on check failures, 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

from .util import canonical_json


def _post(path: str, payload: dict, server: str | None):
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            resp = client.post(path, json=payload)
    else:
        from .service.app import app

        async def call():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://braidforge",
                                         timeout=600.0) as client:
                return await client.post(path, json=payload)

        resp = asyncio.run(call())
    if resp.status_code != 200:
        detail = resp.json().get("detail", resp.text)
        print(f"error: {detail}", file=sys.stderr)
        raise SystemExit(2)
    return resp.json()


_STATUS_TAG = {"pass": "PASS", "fail": "FAIL", "documented-diff": "DIFF*"}


def _render(report: dict, json_path: str | None, show_payload_keys=()) -> int:
    for check in report["checks"]:
        tag = _STATUS_TAG.get(check["status"], check["status"].upper())
        line = f"[{tag}] {check['name']}"
        if check.get("anchor"):
            line += f"  [{check['anchor']}]"
        if check.get("detail"):
            line += f"\n       {check['detail']}"
        print(line)
    payload = report.get("payload") or {}
    for key in show_payload_keys:
        if key in payload:
            print(f"{key}:")
            value = payload[key]
            if isinstance(value, dict):
                for k, v in value.items():
                    print(f"  {k}: {v}")
            elif isinstance(value, list):
                print("  " + " ".join(str(v) for v in value))
            else:
                print(f"  {value}")
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(canonical_json(report))
        print(f"report written to {json_path}")
    passed = report["passed"]
    print("all checks passed" if passed else "CHECK FAILURES PRESENT")
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidforge",
        description="Verify the 9x9 baxterized braid family, derive and "
                    "classify its RTT relation ideals, check the bialgebra "
                    "axioms and the truncated dual.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    ybe = sub.add_parser("verify-ybe", help="constant or baxterized identities")
    mode = ybe.add_mutually_exclusive_group()
    mode.add_argument("--constant", action="store_true",
                      help="exact checks for the constant solutions (default)")
    mode.add_argument("--baxterized", action="store_true",
                      help="seeded numeric checks of the parametric identities")
    ybe.add_argument("--all-cases", action="store_true",
                     help="all eight sign cases (default)")
    ybe.add_argument("--case", default=None, help="one sign case, e.g. +-+")
    ybe.add_argument("--samples", type=int, default=100)
    ybe.add_argument("--tol", type=float, default=1e-9)
    ybe.add_argument("--seed", type=int, default=0)
    ybe.add_argument("--dump-matrix", action="store_true",
                     help="include matrix JSON in the report payload")
    ybe.add_argument("--json", dest="json_path", default=None)

    derive = sub.add_parser("derive", help="derive one case's relation ideal")
    derive.add_argument("--case", required=True)
    derive.add_argument("--basis", choices=("tilde", "original"), default="tilde")
    derive.add_argument("--diff-paper", action="store_true",
                        help="also diff against the transcribed reference list")
    derive.add_argument("--json", dest="json_path", default=None)

    classify = sub.add_parser("classify", help="conjugation classes and witnesses")
    classify.add_argument("--all", action="store_true", help="accepted for symmetry")
    classify.add_argument("--json", dest="json_path", default=None)

    diff = sub.add_parser("diff-paper",
                          help="diff derived ideals against the reference lists")
    diff.add_argument("--case", default=None, help="default: all eight")
    diff.add_argument("--json", dest="json_path", default=None)

    bial = sub.add_parser("check-bialgebra", help="coproduct/counit compatibility")
    bial.add_argument("--case", default=None, help="default: all eight")
    bial.add_argument("--basis", choices=("original", "tilde", "hat"),
                      default="original")
    bial.add_argument("--json", dest="json_path", default=None)

    cop = sub.add_parser("show-coproducts", help="recomputed coproduct tables")
    cop.add_argument("--basis", choices=("original", "tilde", "hat"), default="hat")
    cop.add_argument("--diff-paper", action="store_true",
                     help="diff against the transcribed display")
    cop.add_argument("--json", dest="json_path", default=None)

    dualp = sub.add_parser("dual", help="truncated dual of the studied case")
    dualp.add_argument("--max-degree", type=int, default=4)
    dualp.add_argument("--identity", default=None,
                       help='one identity, e.g. "[K,P]-2P" or "M N = -2 K"')
    dualp.add_argument("--json", dest="json_path", default=None)

    basis = sub.add_parser("basis", help="normal words of one degree")
    basis.add_argument("--degree", type=int, default=3)
    basis.add_argument("--diff-paper", action="store_true")
    basis.add_argument("--json", dest="json_path", default=None)

    serve = sub.add_parser("serve", help="run the verification service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    server = args.server

    if args.command == "verify-ybe":
        mode = "baxterized" if args.baxterized else "constant"
        cases = [args.case] if args.case else None
        report = _post("/verify-ybe", {
            "mode": mode, "cases": cases, "samples": args.samples,
            "tol": args.tol, "seed": args.seed,
            "dump_matrix": args.dump_matrix}, server)
        keys = ("residuals",) if mode == "baxterized" else ()
        return _render(report, args.json_path, keys)

    if args.command == "derive":
        report = _post("/derive", {
            "case": args.case, "basis": args.basis,
            "diff_reference": args.diff_paper}, server)
        return _render(report, args.json_path, ("blocks",))

    if args.command == "classify":
        report = _post("/classify", {}, server)
        return _render(report, args.json_path)

    if args.command == "diff-paper":
        report = _post("/diff-reference", {"case": args.case}, server)
        return _render(report, args.json_path)

    if args.command == "check-bialgebra":
        report = _post("/check-bialgebra", {
            "case": args.case, "basis": args.basis}, server)
        return _render(report, args.json_path)

    if args.command == "show-coproducts":
        report = _post("/show-coproducts", {
            "basis": args.basis, "diff_reference": args.diff_paper}, server)
        return _render(report, args.json_path, ("coproducts", "counit"))

    if args.command == "dual":
        report = _post("/dual", {
            "max_degree": args.max_degree, "identity": args.identity}, server)
        return _render(report, args.json_path)

    if args.command == "basis":
        report = _post("/basis", {
            "degree": args.degree, "diff_reference": args.diff_paper}, server)
        return _render(report, args.json_path, ("words",))

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
