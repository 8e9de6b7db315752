#!/usr/bin/env python3
"""Compare the compiled text kernels against the pure-Python reference.

Times the three kernels on raw corpus text, then the full pipeline end to
end, once per backend.  Run from the repository root:

    python3 benchmarks/bench_backends.py [--docs 1000] [--repeat 3]
"""

import argparse
import time

from oncospan import PipelineConfig, build_pipeline, process_corpus
from oncospan import _textops
from oncospan.corpusgen import generate_corpus
from oncospan.document import ABBREVIATION_STOPLIST


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(texts, repeat):
    def run_normalize():
        for text in texts:
            _textops.normalize_text(text)

    def run_sentences():
        for text in texts:
            _textops.sentence_spans(text, ABBREVIATION_STOPLIST)

    def run_tokens():
        for text in texts:
            _textops.token_spans(text, 0, len(text))

    return {
        "normalize_text": _time(run_normalize, repeat),
        "sentence_spans": _time(run_sentences, repeat),
        "token_spans": _time(run_tokens, repeat),
    }


def bench_pipeline(documents, repeat):
    pipeline = build_pipeline(PipelineConfig())
    return _time(lambda: process_corpus(pipeline, documents, jobs=1), repeat)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=1000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    documents = generate_corpus(args.docs)
    texts = [doc.text for doc in documents]
    total_chars = sum(len(t) for t in texts)
    print(f"corpus: {args.docs} documents, {total_chars} characters")

    rows = {}
    for backend in _textops.available_backends():
        _textops.set_backend(backend)
        kernels = bench_kernels(texts, args.repeat)
        pipeline = bench_pipeline(documents, args.repeat)
        rows[backend] = {**kernels, "pipeline": pipeline}

    names = ["normalize_text", "sentence_spans", "token_spans", "pipeline"]
    header = f"{'stage':<16}" + "".join(f"{b:>12}" for b in rows)
    if len(rows) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for name in names:
        line = f"{name:<16}"
        values = [rows[b][name] for b in rows]
        for value in values:
            line += f"{value * 1000:>10.1f}ms"
        if len(values) > 1 and min(values) > 0:
            line += f"{max(values) / min(values):>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
