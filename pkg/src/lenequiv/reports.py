"""Run configurations, task dispatch and deterministic report emission.

Reports are experiment artifacts: every float is rounded to 9 significant
digits when the payload is built, dict keys are emitted sorted, and wall
time is kept on the Report object but never serialized, so identical
configs produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .bracket import FormalSum, bracket, bracket_self, bracket_self_terms
from .errors import AlphabetError, ConfigError, DegenerateInputError
from .fuchsian import SPREAD_FLOOR, sample_representation
from .intersections import self_intersections, stabilized_self_count_detail
from .pipeline import (
    build_pair_general,
    build_pair_self,
    check_equal_length_symbolic,
    check_nonconjugate,
    find_min_N,
    is_filling,
)
from .sl2 import translation_length
from .trace_poly import trace_polynomial, verify_trace_identity
from .word_algebra import SurfaceSpec, Word, parse_word

TASKS = ("bracket", "bracket-self", "pairs", "verify", "trace-id", "filling", "sample-reps")

_CSV_VERIFY_COLUMNS = (
    "seed", "n", "tau_left", "tau_right", "rel_dev",
    "nonconjugate", "filling_left", "filling_right",
)


def round9(x: float) -> float:
    """Canonical float for serialization: 9 significant digits, -0.0 folded
    to 0.0."""
    return float(f"{x:.9g}") + 0.0


@dataclass
class RunConfig:
    surface: SurfaceSpec
    task: str
    words: dict = field(default_factory=dict)  # name -> Word
    seeds: tuple = (0,)
    spread: float = 3.0
    word_bound: int = 6
    n_range: tuple = (1, 8)
    tol: float = 1e-9
    output_path: Optional[str] = None
    scc_word_bound: Optional[int] = None

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - {
            "surface", "task", "words", "seeds", "spread", "word_bound",
            "n_range", "tol", "output_path", "scc_word_bound",
        }
        if unknown:
            raise ConfigError("unknown config fields: %s" % ", ".join(sorted(unknown)))
        try:
            sdata = data["surface"]
            surface = SurfaceSpec(
                genus=int(sdata["genus"]),
                boundary_components=int(sdata.get("boundary_components", 0)),
                punctures=int(sdata.get("punctures", 0)),
            )
        except KeyError as exc:
            raise ConfigError("surface requires a genus field") from exc
        except (TypeError, ValueError) as exc:
            raise ConfigError("invalid surface: %s" % exc) from exc
        task = data.get("task")
        if task not in TASKS:
            raise ConfigError("unknown task %r (expected one of %s)" % (task, ", ".join(TASKS)))
        words = {}
        for name, text in dict(data.get("words", {})).items():
            try:
                words[name] = parse_word(str(text), rank=surface.rank)
            except AlphabetError as exc:
                raise ConfigError("word %r does not parse: %s" % (name, exc)) from exc
        seeds = data.get("seeds", [0])
        if not isinstance(seeds, (list, tuple)) or not seeds or not all(
            isinstance(s, int) and not isinstance(s, bool) for s in seeds
        ):
            raise ConfigError("seeds must be a nonempty list of integers")
        spread = float(data.get("spread", 3.0))
        if spread < SPREAD_FLOOR:
            raise ConfigError("spread must be at least %s" % SPREAD_FLOOR)
        word_bound = int(data.get("word_bound", 6))
        if word_bound < 1:
            raise ConfigError("word_bound must be positive")
        n_range = tuple(data.get("n_range", (1, 8)))
        if len(n_range) != 2 or n_range[0] < 1 or n_range[1] < n_range[0]:
            raise ConfigError("n_range must be [lo, hi] with 1 <= lo <= hi")
        tol = float(data.get("tol", 1e-9))
        if not (0.0 < tol <= 1e-3):
            raise ConfigError("tol must lie in (0, 1e-3]")
        scc = data.get("scc_word_bound")
        if scc is not None:
            scc = int(scc)
            if scc < 1:
                raise ConfigError("scc_word_bound must be positive")
        return cls(
            surface=surface,
            task=task,
            words=words,
            seeds=tuple(seeds),
            spread=spread,
            word_bound=word_bound,
            n_range=(int(n_range[0]), int(n_range[1])),
            tol=tol,
            output_path=data.get("output_path"),
            scc_word_bound=scc,
        )

    def echo(self) -> dict:
        return {
            "surface": {
                "genus": self.surface.genus,
                "boundary_components": self.surface.boundary_components,
                "punctures": self.surface.punctures,
            },
            "task": self.task,
            "words": {name: str(w) for name, w in sorted(self.words.items())},
            "seeds": list(self.seeds),
            "spread": round9(self.spread),
            "word_bound": self.word_bound,
            "n_range": list(self.n_range),
            "tol": round9(self.tol),
            "scc_word_bound": self.scc_word_bound,
        }


@dataclass
class Report:
    config: dict
    task: str
    payload: dict
    versions: dict
    wall_time_s: float = 0.0  # informational; never serialized

    def to_json_obj(self) -> dict:
        return {
            "config": self.config,
            "task": self.task,
            "versions": self.versions,
            "payload": self.payload,
        }


def _need(config: RunConfig, *names: str) -> list:
    out = []
    for group in names:
        for name in group.split("|"):
            if name in config.words:
                out.append(config.words[name])
                break
        else:
            raise ConfigError("task %r needs word %r in the config words map" % (config.task, group))
    return out


def _reps(config: RunConfig):
    return [sample_representation(config.surface, seed, spread=config.spread) for seed in config.seeds]


def _serialize_sum(s: FormalSum):
    return [[key, coeff] for key, coeff in s.serialize()]


def _task_trace_id(config: RunConfig) -> dict:
    lo, hi = config.n_range
    rows = [{"n": n, "holds": verify_trace_identity(n)} for n in range(lo, hi + 1)]
    polys = {
        "left_n%d" % hi: str(trace_polynomial(parse_word("a" * hi + "b"))),
        "right_n%d" % hi: str(trace_polynomial(parse_word("b" * hi + "a"))),
    }
    return {"rows": rows, "all_hold": all(r["holds"] for r in rows), "sample_polynomials": polys}


def _task_sample_reps(config: RunConfig) -> dict:
    entries = []
    for rep in _reps(config):
        info = rep.summary()
        info["matrices"] = [[round9(v) for v in row] for row in info["matrices"]]
        info["spread"] = round9(info["spread"])
        info["certified"] = rep.certificate is not None
        if rep.certificate is not None:
            info["k_scale"] = round9(rep.certificate.k_scale)
        entries.append(info)
    return {"representations": entries}


def _task_bracket(config: RunConfig) -> dict:
    alpha, beta = _need(config, "alpha", "beta")
    entries = []
    for rep in _reps(config):
        s = bracket(alpha, beta, rep, config.word_bound)
        entries.append({
            "seed": rep.seed,
            "terms": _serialize_sum(s),
            "term_count": len(s.terms),
            "is_zero": s.is_zero(),
        })
    return {"alpha": str(alpha), "beta": str(beta), "per_seed": entries}


def _task_bracket_self(config: RunConfig) -> dict:
    (alpha,) = _need(config, "alpha")
    entries = []
    for rep in _reps(config):
        terms = bracket_self_terms(alpha, rep, config.word_bound)
        folded = bracket_self(alpha, rep, config.word_bound)
        entries.append({
            "seed": rep.seed,
            "pre_cancellation": [[cw.key, sign] for cw, sign in terms],
            "folded": _serialize_sum(folded),
            "is_zero": folded.is_zero(),
        })
    return {"alpha": str(alpha), "per_seed": entries}


def _first_self_record(alpha: Word, rep, word_bound: int):
    count, bound = stabilized_self_count_detail(alpha, rep, cap=max(word_bound, 12))
    records = self_intersections(alpha, rep, bound)
    if not records:
        raise DegenerateInputError("word %r has no self-intersections" % str(alpha))
    return records[0], count, bound


def _task_pairs(config: RunConfig) -> dict:
    (alpha,) = _need(config, "alpha")
    entries = []
    lo, hi = config.n_range
    for rep in _reps(config):
        record, count, bound = _first_self_record(alpha, rep, config.word_bound)
        n_observed, table = find_min_N(alpha, record, hi)
        entries.append({
            "seed": rep.seed,
            "self_intersection_count": count,
            "stabilized_at_bound": bound,
            "witness": str(record.witness),
            "n_observed": n_observed,
            "table": [
                {"n": n, "nonconjugate": nc, "not_conjugate_to_inverse": ni}
                for n, nc, ni in table
            ],
        })
    return {"alpha": str(alpha), "per_seed": entries}


def _build_pair_factory(config: RunConfig, rep):
    """Self pair from alpha's first witness, or general pair when beta, g
    and h are all named in the config."""
    names = config.words
    if {"beta", "g", "h"} <= set(names):
        (alpha,) = _need(config, "alpha")
        beta, g, h = names["beta"], names["g"], names["h"]
        return lambda n: build_pair_general(alpha, beta, g, h, n), str(g)
    (alpha,) = _need(config, "alpha")
    record, _, _ = _first_self_record(alpha, rep, config.word_bound)
    return lambda n: build_pair_self(alpha, record, n), str(record.witness)


def _task_verify(config: RunConfig) -> dict:
    reps = _reps(config)
    lo, hi = config.n_range
    rows = []
    witness = None
    all_equal = True
    symbolic_ok = True
    max_dev_overall = 0.0
    for rep in reps:
        factory, witness = _build_pair_factory(config, rep)
        for n in range(lo, hi + 1):
            pair = factory(n)
            tau_l = translation_length(rep.evaluate(pair.left))
            tau_r = translation_length(rep.evaluate(pair.right))
            rel = abs(tau_l - tau_r) / max(tau_l, tau_r)
            max_dev_overall = max(max_dev_overall, rel)
            if rel > config.tol:
                all_equal = False
            if not check_equal_length_symbolic(pair, [rep], config.tol):
                symbolic_ok = False
            nonconj, not_inv = check_nonconjugate(pair)
            if config.scc_word_bound is not None:
                fill_l = is_filling(pair.left, rep, config.scc_word_bound)[0]
                fill_r = is_filling(pair.right, rep, config.scc_word_bound)[0]
            else:
                fill_l = fill_r = "skipped"
            rows.append({
                "seed": rep.seed,
                "n": n,
                "tau_left": round9(tau_l),
                "tau_right": round9(tau_r),
                "rel_dev": round9(rel),
                "nonconjugate": nonconj and not_inv,
                "filling_left": fill_l,
                "filling_right": fill_r,
            })
    return {
        "witness": witness,
        "rows": rows,
        "equal_length_all": all_equal,
        "symbolic_ok": symbolic_ok,
        "max_rel_dev": round9(max_dev_overall),
        "ok": all_equal and symbolic_ok,
    }


def _task_filling(config: RunConfig) -> dict:
    (w,) = _need(config, "w|alpha")
    bound = config.scc_word_bound if config.scc_word_bound is not None else 4
    entries = []
    for rep in _reps(config):
        verdict, witnesses, table = is_filling(w, rep, bound)
        entries.append({
            "seed": rep.seed,
            "verdict": verdict,
            "witnesses": [str(z) for z in witnesses],
            "candidates": table,
        })
    return {"word": str(w), "scc_word_bound": bound, "per_seed": entries}


_DISPATCH = {
    "trace-id": _task_trace_id,
    "sample-reps": _task_sample_reps,
    "bracket": _task_bracket,
    "bracket-self": _task_bracket_self,
    "pairs": _task_pairs,
    "verify": _task_verify,
    "filling": _task_filling,
}


def run(config: RunConfig) -> Report:
    started = time.perf_counter()
    payload = _DISPATCH[config.task](config)
    report = Report(
        config=config.echo(),
        task=config.task,
        payload=payload,
        versions={"lenequiv": __version__},
        wall_time_s=time.perf_counter() - started,
    )
    return report


def _csv_rows(report: Report):
    task = report.task
    p = report.payload
    if task == "verify":
        return _CSV_VERIFY_COLUMNS, [
            [row[c] for c in _CSV_VERIFY_COLUMNS] for row in p["rows"]
        ]
    if task == "trace-id":
        return ("n", "holds"), [[r["n"], r["holds"]] for r in p["rows"]]
    if task == "pairs":
        cols = ("seed", "n", "nonconjugate", "not_conjugate_to_inverse")
        rows = []
        for entry in p["per_seed"]:
            for r in entry["table"]:
                rows.append([entry["seed"], r["n"], r["nonconjugate"], r["not_conjugate_to_inverse"]])
        return cols, rows
    if task == "filling":
        cols = ("seed", "class", "peripheral", "count")
        rows = []
        for entry in p["per_seed"]:
            for r in entry["candidates"]:
                rows.append([entry["seed"], r["class"], r["peripheral"], r["count"]])
        return cols, rows
    if task in ("bracket", "bracket-self"):
        cols = ("seed", "term", "coefficient")
        rows = []
        for entry in p["per_seed"]:
            terms = entry["terms"] if task == "bracket" else entry["folded"]
            if not terms:
                rows.append([entry["seed"], "", 0])
            for key, coeff in terms:
                rows.append([entry["seed"], key, coeff])
        return cols, rows
    if task == "sample-reps":
        cols = ("seed", "generator", "a", "b", "c", "d")
        rows = []
        for info in p["representations"]:
            for gi, m in enumerate(info["matrices"], start=1):
                rows.append([info["seed"], gi] + list(m))
        return cols, rows
    raise ConfigError("no csv form for task %r" % task)


def _text_lines(report: Report):
    lines = []
    cfg = report.config
    lines.append("lenequiv %s  task=%s" % (report.versions["lenequiv"], report.task))
    lines.append(
        "surface genus=%d boundary=%d punctures=%d  seeds=%s spread=%s"
        % (
            cfg["surface"]["genus"],
            cfg["surface"]["boundary_components"],
            cfg["surface"]["punctures"],
            ",".join(str(s) for s in cfg["seeds"]),
            cfg["spread"],
        )
    )
    if cfg["words"]:
        lines.append("words: " + "  ".join("%s=%s" % kv for kv in cfg["words"].items()))
    p = report.payload
    task = report.task
    if task == "trace-id":
        for r in p["rows"]:
            lines.append("n=%-3d identity holds: %s" % (r["n"], r["holds"]))
        lines.append("all hold: %s" % p["all_hold"])
    elif task == "pairs":
        for entry in p["per_seed"]:
            lines.append(
                "seed %d: witness g=%s, self-intersections=%d, N_observed=%s"
                % (entry["seed"], entry["witness"], entry["self_intersection_count"],
                   entry["n_observed"])
            )
            for r in entry["table"]:
                lines.append(
                    "  n=%-3d nonconjugate=%s not_conjugate_to_inverse=%s"
                    % (r["n"], r["nonconjugate"], r["not_conjugate_to_inverse"])
                )
    elif task == "verify":
        lines.append("witness: %s" % p["witness"])
        for r in p["rows"]:
            lines.append(
                "seed %d n=%-3d tau_left=%.9g tau_right=%.9g rel_dev=%.3g nonconj=%s fill=%s/%s"
                % (r["seed"], r["n"], r["tau_left"], r["tau_right"], r["rel_dev"],
                   r["nonconjugate"], r["filling_left"], r["filling_right"])
            )
        lines.append(
            "equal_length_all=%s symbolic_ok=%s max_rel_dev=%.3g"
            % (p["equal_length_all"], p["symbolic_ok"], p["max_rel_dev"])
        )
    elif task == "filling":
        lines.append("word: %s  scc_word_bound=%d" % (p["word"], p["scc_word_bound"]))
        for entry in p["per_seed"]:
            lines.append("seed %d: verdict=%s witnesses=%s"
                         % (entry["seed"], entry["verdict"], ",".join(entry["witnesses"]) or "-"))
            for r in entry["candidates"]:
                lines.append("  z=%-8s peripheral=%-5s i(z,w)=%d"
                             % (r["class"], r["peripheral"], r["count"]))
    elif task in ("bracket", "bracket-self"):
        for entry in p["per_seed"]:
            terms = entry["terms"] if task == "bracket" else entry["folded"]
            body = " ".join("%+d*<%s>" % (coeff, key) for key, coeff in terms) or "0"
            lines.append("seed %d: %s" % (entry["seed"], body))
            if task == "bracket-self":
                lines.append("  pre-cancellation terms: %d" % len(entry["pre_cancellation"]))
    elif task == "sample-reps":
        for info in p["representations"]:
            lines.append("seed %d: certified=%s k_scale=%s"
                         % (info["seed"], info["certified"], info.get("k_scale", "-")))
            for gi, m in enumerate(info["matrices"], start=1):
                lines.append("  gen %d: [[%.9g, %.9g], [%.9g, %.9g]]" % (gi, *m))
    return lines


def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        text = json.dumps(report.to_json_obj(), sort_keys=True, indent=2)
        return (text + "\n").encode("utf-8")
    if fmt == "csv":
        cols, rows = _csv_rows(report)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in rows:
            writer.writerow(row)
        return buf.getvalue().encode("utf-8")
    if fmt == "text":
        return ("\n".join(_text_lines(report)) + "\n").encode("utf-8")
    raise ConfigError("unknown format %r (expected json, csv or text)" % fmt)


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config %s is not valid JSON: %s" % (path, exc)) from exc
    return RunConfig.from_dict(data)
