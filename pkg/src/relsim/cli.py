"""Command-line surface: index building, vector caching, analogy solving,
noun-modifier evaluation, and threshold sweeps.

Exit codes: 0 success, 1 input error, 2 internal error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import analogy, sweep
from .cache import VectorCache, load_cache
from .errors import DataFormatError, InputError
from .index import (CountMode, build_index, load_corpus, load_index,
                    save_index)
from .nounmod import GROUPS, load_labeled_pairs, loocv, macroaverage
from .terms import default_joining_terms, load_joining_terms, terms_checksum
from .vectors import LocalIndexProvider, WordPair, build_vector


def _pct(x: float) -> str:
    return f"{100 * x:.1f}%"


@click.group()
def cli():
    """Relational similarity toolkit: phrase-frequency vectors over a local
    corpus index, SAT-style analogy solving, and noun-modifier relation
    classification."""


# ---------------------------------------------------------------------------
# index

@cli.group()
def index():
    """Corpus index commands."""


@index.command("build")
@click.argument("corpus", type=click.Path(exists=True))
@click.option("-o", "--output", "output", required=True, type=click.Path())
def index_build(corpus, output):
    """Tokenize a corpus and write a positional index.

    CORPUS is a directory of text files (one document each, doc ids by
    filename order) or a single file with documents separated by a line
    containing only "%%".
    """
    docs = load_corpus(corpus)
    if not docs or all(not d.tokens for d in docs):
        click.echo("warning: corpus is empty", err=True)
    idx = build_index(docs)
    save_index(idx, output)
    click.echo(f"documents: {idx.doc_count}")
    click.echo(f"tokens: {idx.token_count}")
    click.echo(f"vocabulary: {idx.vocabulary_size}")


# ---------------------------------------------------------------------------
# vectors

def _load_terms(terms_path):
    return load_joining_terms(terms_path) if terms_path else default_joining_terms()


def _extract_pairs(path: str, fmt: str) -> list[WordPair]:
    if fmt == "sat":
        pairs = []
        for q in analogy.load_questions(path):
            pairs.extend(q.pairs())
        return pairs
    if fmt == "nounmod":
        return [item.pair() for item in load_labeled_pairs(path)]
    # plain pairs: one per line, "x<TAB>y" or "x:y"
    pairs = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" in line:
            x, y = line.split("\t")[:2]
            pairs.append(WordPair(x.strip().lower(), y.strip().lower()))
        else:
            pairs.append(analogy.parse_pair(line))
    return pairs


@cli.command("vectors")
@click.argument("pairs_file", type=click.Path(exists=True))
@click.option("--index", "index_path", required=True, type=click.Path(exists=True))
@click.option("--cache", "cache_path", required=True, type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["pairs", "sat", "nounmod"]),
              default="pairs", show_default=True)
@click.option("--mode", type=click.Choice(["document", "occurrence"]),
              default="document", show_default=True)
@click.option("--terms", "terms_path", type=click.Path(exists=True), default=None,
              help="Alternative joining-term table (64 lines).")
def vectors_cmd(pairs_file, index_path, cache_path, fmt, mode, terms_path):
    """Compute and cache raw hit-count vectors for every distinct pair."""
    idx = load_index(index_path)
    terms = _load_terms(terms_path)
    checksum = terms_checksum(terms)
    if Path(cache_path).exists():
        cache = load_cache(cache_path, idx.corpus_digest, checksum)
    else:
        cache = VectorCache(idx.corpus_digest, checksum)
    provider = LocalIndexProvider(idx, CountMode(mode))

    pairs = _extract_pairs(pairs_file, fmt)
    seen: set[str] = set()
    computed = reused = 0
    for pair in pairs:
        if pair.key() in seen:
            continue
        seen.add(pair.key())
        if pair in cache:
            reused += 1
            continue
        cache.put(pair, build_vector(provider, pair, terms).raw)
        computed += 1
    cache.save(cache_path)
    click.echo(f"pairs: {len(seen)} distinct ({computed} computed, {reused} reused)")


def _load_cache_for(cache_path, index_path, terms_path):
    terms = _load_terms(terms_path)
    checksum = terms_checksum(terms)
    if index_path:
        digest = load_index(index_path).corpus_digest
        return load_cache(cache_path, digest, checksum)
    return load_cache(cache_path, None, None)


def _require_vectors(cache, pairs):
    missing = sorted({p.key() for p in pairs if p not in cache})
    if missing:
        raise DataFormatError("missing cached vectors for pairs: " + ", ".join(missing))
    return {p.key(): cache.vector(p) for p in pairs}


def _parse_sweep_spec(spec: str):
    try:
        lo, hi, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise DataFormatError(f"bad sweep spec {spec!r}, expected LO:HI:STEP") from None
    return sweep.grid_thresholds(lo, hi, step)


# ---------------------------------------------------------------------------
# sat

@cli.group()
def sat():
    """Analogy question commands."""


@sat.command("solve")
@click.argument("questions_file", type=click.Path(exists=True))
@click.option("--cache", "cache_path", required=True, type=click.Path(exists=True))
@click.option("--index", "index_path", type=click.Path(exists=True), default=None,
              help="Verify cache provenance against this index.")
@click.option("--terms", "terms_path", type=click.Path(exists=True), default=None)
@click.option("--threshold", type=float, default=0.0, show_default=True)
@click.option("--sweep", "sweep_spec", default=None, metavar="LO:HI:STEP",
              help="Sweep the margin threshold and write CSV rows.")
@click.option("--csv", "csv_path", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tie-break", type=click.Choice(["random", "first"]),
              default="random", show_default=True)
def sat_solve(questions_file, cache_path, index_path, terms_path, threshold,
              sweep_spec, csv_path, seed, tie_break):
    """Answer analogy questions at a margin threshold, or sweep thresholds."""
    questions = analogy.load_questions(questions_file)
    cache = _load_cache_for(cache_path, index_path, terms_path)
    vectors = _require_vectors(cache, [p for q in questions for p in q.pairs()])

    if sweep_spec is not None:
        thresholds = _parse_sweep_spec(sweep_spec)
        rows = sweep.sat_sweep(questions, vectors, thresholds, seed, tie_break)
        csv_text = sweep.rows_to_csv(rows)
        if csv_path:
            Path(csv_path).write_text(csv_text, encoding="utf-8")
            click.echo(f"wrote {len(rows)} rows to {csv_path}")
        else:
            click.echo(csv_text, nl=False)
        return

    outcomes = analogy.solve_all(questions, vectors, threshold, seed, tie_break)
    report = analogy.evaluate(questions, outcomes)
    doubles = sum(1 for o in outcomes if len(o.guesses) == 2)
    click.echo(f"total: {report.total}")
    click.echo(f"correct: {report.correct}")
    click.echo(f"incorrect: {report.incorrect}")
    click.echo(f"skipped: {report.skipped}")
    click.echo(f"double guesses: {doubles}")
    click.echo(f"precision: {_pct(report.precision)}")
    click.echo(f"recall: {_pct(report.recall)}")
    click.echo(f"F: {_pct(report.f)}")
    click.echo(f"raw SAT score: {analogy.raw_sat_score(report.correct, report.incorrect):g}")


@sat.command("rank")
@click.argument("questions_file", type=click.Path(exists=True))
@click.option("--cache", "cache_path", required=True, type=click.Path(exists=True))
@click.option("--index", "index_path", type=click.Path(exists=True), default=None)
@click.option("--terms", "terms_path", type=click.Path(exists=True), default=None)
@click.option("--top", type=int, default=10, show_default=True)
def sat_rank(questions_file, cache_path, index_path, terms_path, top):
    """Pool-ranking evaluation: each stem ranks the pool of all correct
    choice pairs; report how often its own pair lands in the top k."""
    questions = analogy.load_questions(questions_file)
    cache = _load_cache_for(cache_path, index_path, terms_path)
    vectors = _require_vectors(cache, [p for q in questions for p in q.pairs()])

    usable = [q for q in questions if not vectors[q.stem.key()].is_zero()]
    dropped = len(questions) - len(usable)
    pool = [vectors[q.choices[q.answer].key()] for q in usable]
    ranks = []
    for i, q in enumerate(usable):
        ranking = analogy.rank_pool(vectors[q.stem.key()], pool)
        ranks.append(analogy.rank_of(ranking, i))

    click.echo(f"questions: {len(usable)} (dropped {dropped} with zero stem vectors)")
    click.echo("rank\tmatches\tmatches%\tcumulative\tcumulative%")
    total = len(usable)
    for row in analogy.cumulative_top_k(ranks, top):
        m_pct = _pct(row.matches / total if total else 0.0)
        click.echo(f"{row.k}\t{row.matches}\t{m_pct}\t{row.cumulative}\t{_pct(row.cumulative_pct)}")


# ---------------------------------------------------------------------------
# nounmod

@cli.group()
def nounmod():
    """Noun-modifier classification commands."""


@nounmod.command("eval")
@click.argument("data_file", type=click.Path(exists=True))
@click.option("--cache", "cache_path", required=True, type=click.Path(exists=True))
@click.option("--index", "index_path", type=click.Path(exists=True), default=None)
@click.option("--terms", "terms_path", type=click.Path(exists=True), default=None)
@click.option("--classes", "granularity", type=click.Choice(["30", "5"]),
              default="30", show_default=True)
@click.option("--threshold", type=float, default=0.0, show_default=True)
@click.option("--sweep", "sweep_spec", default=None, metavar="LO:HI:STEP")
@click.option("--csv", "csv_path", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tie-break", type=click.Choice(["random", "first"]),
              default="random", show_default=True)
def nounmod_eval(data_file, cache_path, index_path, terms_path, granularity,
                 threshold, sweep_spec, csv_path, seed, tie_break):
    """Leave-one-out nearest-neighbour evaluation of labeled pairs."""
    items = load_labeled_pairs(data_file)
    cache = _load_cache_for(cache_path, index_path, terms_path)
    vectors_map = _require_vectors(cache, [item.pair() for item in items])
    vecs = [vectors_map[item.pair().key()] for item in items]
    labels = [item.label for item in items]
    gran = int(granularity)

    if sweep_spec is not None:
        thresholds = _parse_sweep_spec(sweep_spec)
        rows = sweep.nounmod_sweep(vecs, labels, thresholds, gran, seed, tie_break)
        csv_text = sweep.rows_to_csv(rows)
        if csv_path:
            Path(csv_path).write_text(csv_text, encoding="utf-8")
            click.echo(f"wrote {len(rows)} rows to {csv_path}")
        else:
            click.echo(csv_text, nl=False)
        return

    result = loocv(vecs, labels, threshold, gran, seed, tie_break=tie_break)
    click.echo("class\tsize\tpercent\tprecision\trecall\tF")
    for m in result.per_class:
        click.echo(f"{m.label}\t{m.size}\t{_pct(m.size / result.total)}"
                   f"\t{_pct(m.precision)}\t{_pct(m.recall)}\t{_pct(m.f)}")
    p, r, f = macroaverage(result.per_class)
    click.echo(f"macroaverage\t\t\t{_pct(p)}\t{_pct(r)}\t{_pct(f)}")
    click.echo(f"items: {result.total}, correct: {result.correct}, "
               f"abstained: {result.abstained}, double guesses: {result.doubles}")


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as e:
        sys.exit(e.exit_code)
    except (click.ClickException, click.exceptions.Abort) as e:
        if isinstance(e, click.ClickException):
            e.show(file=sys.stderr)
        sys.exit(1)
    except InputError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    except Exception as e:  # internal failure
        click.echo(f"internal error: {e}", err=True)
        sys.exit(2)
    sys.exit(0)


if __name__ == "__main__":
    main()
