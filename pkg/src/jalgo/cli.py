"""Command-line entry points: check, run, trace, debug, serve."""
from __future__ import annotations

import argparse
import os
import socket
import sys
from pathlib import Path
from typing import Optional

from . import compile_source
from .encoding import dumps, trace_document
from .errors import CompileFailure
from .interpreter import RunLimits, Trace, execute
from .session import Session

# Exit codes: 0 success, 1 compile errors, 2 runtime error in the program,
# 3 usage error, 4 I/O error.
EXIT_OK = 0
EXIT_COMPILE = 1
EXIT_RUNTIME = 2
EXIT_USAGE = 3
EXIT_IO = 4

DEFAULT_PORT = 8321
PORT_ENV_VAR = "JALGO_PORT"


class _CliExit(Exception):
    def __init__(self, code: int):
        self.code = code


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 3, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _CliExit(EXIT_USAGE)


def _read_source(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"jalgo: cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
        raise _CliExit(EXIT_IO) from exc


def _compile_or_report(path: str, source: str):
    try:
        return compile_source(source)
    except CompileFailure as failure:
        for err in failure.errors:
            print(f"{path}:{err.render()}", file=sys.stderr)
        raise _CliExit(EXIT_COMPILE) from failure


def _limits(args: argparse.Namespace) -> RunLimits:
    kwargs = {}
    if getattr(args, "max_frames", None) is not None:
        kwargs["max_frames"] = args.max_frames
    if getattr(args, "max_nodes", None) is not None:
        kwargs["max_nodes"] = args.max_nodes
    try:
        return RunLimits(**kwargs)
    except ValueError as exc:
        print(f"jalgo: {exc}", file=sys.stderr)
        raise _CliExit(EXIT_USAGE) from exc


def _trace_file(path: str, args: argparse.Namespace) -> Trace:
    source = _read_source(path)
    program, table = _compile_or_report(path, source)
    return execute(program, table, _limits(args))


def cmd_check(args: argparse.Namespace) -> int:
    source = _read_source(args.file)
    _compile_or_report(args.file, source)
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    trace = _trace_file(args.file, args)
    for event in trace.output:
        print(event.text)
    if trace.status == "runtime_error":
        err = trace.error
        print(f"{args.file}:{err.line}: runtime error: {err.message} [{err.code}]",
              file=sys.stderr)
        return EXIT_RUNTIME
    if trace.status == "step_limit":
        print(f"{args.file}: stopped after {len(trace.frames)} frames (step limit) [R-7]",
              file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_trace(args: argparse.Namespace) -> int:
    trace = _trace_file(args.file, args)
    document = dumps(trace_document(trace))
    if args.out:
        try:
            Path(args.out).write_text(document, encoding="utf-8")
        except OSError as exc:
            print(f"jalgo: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_IO
    else:
        print(document)
    return EXIT_RUNTIME if trace.status == "runtime_error" else EXIT_OK


def cmd_debug(args: argparse.Namespace) -> int:
    source = _read_source(args.file)
    program, table = _compile_or_report(args.file, source)
    trace = execute(program, table, _limits(args))
    session = Session.open(trace)
    source_lines = source.replace("\r\n", "\n").split("\n")
    last = len(trace.frames) - 1

    def render() -> None:
        frame = session.current
        if frame.line == 0:
            print(f"[{frame.step}/{last}] (end of run)")
        else:
            text = source_lines[frame.line - 1] if frame.line <= len(source_lines) else ""
            print(f"[{frame.step}/{last}] > {frame.line:>3} | {text}")

    print(f"{args.file}: {len(trace.frames)} frames, status {trace.status}")
    print("commands: s (step) r (back) b <line> c (continue) cb (continue back) p q")
    render()
    while True:
        try:
            raw = input("(jalgo) ")
        except EOFError:
            return EXIT_OK
        parts = raw.split()
        if not parts:
            continue
        cmd = parts[0]
        if cmd == "q":
            return EXIT_OK
        if cmd == "s":
            if session.cursor == last:
                print("(end)")
            else:
                session.step("forward")
                render()
        elif cmd == "r":
            if session.cursor == 0:
                print("(start)")
            else:
                session.step("back")
                render()
        elif cmd == "b":
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                print("usage: b <line>  (line is a positive integer)")
                continue
            points = session.toggle_breakpoint(int(parts[1]))
            print("breakpoints: " + (", ".join(str(p) for p in sorted(points)) or "(none)"))
        elif cmd in ("c", "cb"):
            session.continue_("forward" if cmd == "c" else "back")
            render()
        elif cmd == "p":
            frame = session.current
            print(f"step={frame.step} line={frame.line} "
                  f"roots={list(frame.roots)} selected={frame.selected}")
        else:
            print("commands: s r b <line> c cb p q")


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    port = args.port
    if port is None:
        env_port = os.environ.get(PORT_ENV_VAR)
        if env_port is not None:
            if not env_port.isdigit():
                print(f"jalgo: {PORT_ENV_VAR} must be an integer, got {env_port!r}",
                      file=sys.stderr)
                return EXIT_USAGE
            port = int(env_port)
        else:
            port = DEFAULT_PORT
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.bind, port))
        sock.listen(128)
    except OSError as exc:
        print(f"jalgo: cannot bind {args.bind}:{port}: {exc.strerror or exc}", file=sys.stderr)
        sock.close()
        return EXIT_IO
    host, actual_port = sock.getsockname()[:2]
    print(f"jalgo service listening on http://{host}:{actual_port}", flush=True)
    config = uvicorn.Config(create_app(), log_level="info", access_log=True)
    server = uvicorn.Server(config)
    try:
        server.run(sockets=[sock])
    except KeyboardInterrupt:
        pass
    finally:
        sock.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="jalgo", description="jAlgo toolchain")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_limit_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-frames", type=int, default=None,
                       help="frame limit before the run is cut off")
        p.add_argument("--max-nodes", type=int, default=None,
                       help="node allocation limit")

    p_check = sub.add_parser("check", help="compile a program and report diagnostics")
    p_check.add_argument("file")
    p_check.set_defaults(func=cmd_check)

    p_run = sub.add_parser("run", help="run a program and print its output")
    p_run.add_argument("file")
    add_limit_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_trace = sub.add_parser("trace", help="run a program and emit its full trace as JSON")
    p_trace.add_argument("file")
    p_trace.add_argument("--format", choices=["json"], default="json")
    p_trace.add_argument("--out", default=None, help="write the document to a file")
    add_limit_flags(p_trace)
    p_trace.set_defaults(func=cmd_trace)

    p_debug = sub.add_parser("debug", help="interactive terminal stepper")
    p_debug.add_argument("file")
    add_limit_flags(p_debug)
    p_debug.set_defaults(func=cmd_debug)

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    p_serve.add_argument("--port", type=int, default=None,
                         help=f"port (default {DEFAULT_PORT}, or ${PORT_ENV_VAR}; 0 = ephemeral)")
    p_serve.add_argument("--bind", default="127.0.0.1", help="bind address")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _CliExit as stop:
        return stop.code
    except SystemExit as stop:  # argparse --help
        return stop.code if isinstance(stop.code, int) else EXIT_OK
    except KeyboardInterrupt:
        return EXIT_OK
