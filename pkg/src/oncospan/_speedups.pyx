# cython: language_level=3
"""Compiled text kernels.

Same contract as ``_textops_py``; the loops run over Py_UCS4 scalars so the
per-character dispatch stays in C.  Any behavior change here must land in
the pure module too -- the test suite compares both backends on fuzzed
input.
"""

import unicodedata

BACKEND_NAME = "c"

cdef dict _CHAR_CACHE = {}

_nfd = unicodedata.normalize
_category = unicodedata.category


cdef str _norm_char(Py_UCS4 ch):
    cdef str cached = _CHAR_CACHE.get(ch)
    cdef str c
    if cached is None:
        cached = "".join(
            [c for c in _nfd("NFD", chr(ch).lower()) if _category(c) != "Mn"]
        )
        _CHAR_CACHE[ch] = cached
    return cached


cdef bint _is_token_char(Py_UCS4 ch):
    if ch.isalnum():
        return True
    return _category(chr(ch)) == "Mn"


def normalize_text(str text):
    cdef Py_ssize_t i, n = len(text)
    cdef Py_ssize_t k, m
    cdef Py_UCS4 ch
    cdef str repl
    cdef list parts = []
    cdef list offsets = []
    for i in range(n):
        ch = text[i]
        repl = _norm_char(ch)
        m = len(repl)
        if m:
            parts.append(repl)
            for k in range(m):
                offsets.append(i)
    return "".join(parts), offsets


cdef str _norm_slice(str text, Py_ssize_t begin, Py_ssize_t end):
    cdef Py_ssize_t i
    cdef list parts = []
    for i in range(begin, end):
        parts.append(_norm_char(<Py_UCS4> text[i]))
    return "".join(parts)


cdef bint _period_terminates(str text, Py_ssize_t i, frozenset abbreviations):
    cdef Py_ssize_t n = len(text)
    cdef Py_ssize_t j, k
    cdef str token
    if 0 < i < n - 1 and (<Py_UCS4> text[i - 1]).isdigit() and (<Py_UCS4> text[i + 1]).isdigit():
        return False
    j = i - 1
    while j >= 0 and (<Py_UCS4> text[j]).isspace():
        j -= 1
    if j < 0 or not _is_token_char(<Py_UCS4> text[j]):
        return True
    k = j
    while k > 0 and _is_token_char(<Py_UCS4> text[k - 1]):
        k -= 1
    token = _norm_slice(text, k, j + 1)
    if len(token) == 1 and token.isalpha():
        return False
    if token in abbreviations:
        return False
    return True


def sentence_spans(str text, frozenset abbreviations=frozenset()):
    cdef list spans = []
    cdef Py_ssize_t n = len(text)
    cdef Py_ssize_t i = 0, j
    cdef Py_ssize_t start = -1
    cdef Py_ssize_t last = -1
    cdef Py_UCS4 ch
    while i < n:
        ch = text[i]
        if start == -1:
            if ch.isspace():
                i += 1
                continue
            start = i
        if ch == u"\n":
            j = i + 1
            while j < n and (text[j] == u" " or text[j] == u"\t" or text[j] == u"\r"):
                j += 1
            if j >= n or text[j] == u"\n":
                if last > start:
                    spans.append((start, last))
                start = -1
                i = j + 1
                continue
            i += 1
            continue
        if ch == u"." or ch == u"!" or ch == u"?":
            if ch == u"." and not _period_terminates(text, i, abbreviations):
                last = i + 1
                i += 1
                continue
            j = i
            while j + 1 < n and (
                text[j + 1] == u"." or text[j + 1] == u"!" or text[j + 1] == u"?"
            ):
                j += 1
            spans.append((start, j + 1))
            start = -1
            last = -1
            i = j + 1
            continue
        if not ch.isspace():
            last = i + 1
        i += 1
    if start != -1 and last > start:
        spans.append((start, last))
    return spans


def token_spans(str text, Py_ssize_t begin, Py_ssize_t end):
    cdef list out = []
    cdef Py_ssize_t run_start = -1
    cdef bint all_decimal = True
    cdef Py_ssize_t i = begin
    cdef Py_UCS4 ch
    while i < end:
        ch = text[i]
        if _is_token_char(ch):
            if run_start == -1:
                run_start = i
                all_decimal = True
            if not ch.isdecimal():
                all_decimal = False
        else:
            if run_start != -1:
                out.append((run_start, i, 1 if all_decimal else 0))
                run_start = -1
            if not ch.isspace():
                out.append((i, i + 1, 2))
        i += 1
    if run_start != -1:
        out.append((run_start, end, 1 if all_decimal else 0))
    return out
