"""Independent brute-force oracles, kept deliberately separate from the
package's own code paths."""

import math


def oracle_match_unit(unit, token):
    """Match one query unit against one token, by direct string checks."""
    if unit == "*":
        return True
    if "*" in unit:
        prefix, suffix = unit.split("*")
        if len(token) < len(prefix) + len(suffix):
            return False
        middle = token[len(prefix):len(token) - len(suffix)]
        return (token[:len(prefix)] == prefix
                and (token[len(token) - len(suffix):] == suffix if suffix else True)
                and len(middle) <= 5)
    return token == unit


def oracle_count(doc_token_lists, units, mode):
    """Sliding-window phrase count over raw token lists.

    mode: "document" or "occurrence".
    """
    n = len(units)
    docs_hit = 0
    occurrences = 0
    for tokens in doc_token_lists:
        found = 0
        for start in range(len(tokens) - n + 1):
            if all(oracle_match_unit(units[j], tokens[start + j]) for j in range(n)):
                found += 1
        occurrences += found
        if found:
            docs_hit += 1
    return docs_hit if mode == "document" else occurrences


def oracle_cosine(a, b):
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    if na == 0 or nb == 0:
        return 0.0
    return dot / (na * nb)


def oracle_loocv_confusion(raw_vectors, labels, threshold):
    """Exhaustive leave-one-out two-neighbour classification.

    Ties broken by lowest index. Returns a dict (true, guessed-or-None)
    -> count, where each guessed label in a guess set counts once and
    abstentions record (true, None).
    """
    n = len(raw_vectors)
    confusion = {}

    def bump(key):
        confusion[key] = confusion.get(key, 0) + 1

    for i in range(n):
        scored = []
        for j in range(n):
            if j == i:
                continue
            scored.append((-oracle_cosine(raw_vectors[i], raw_vectors[j]), j))
        scored.sort()
        if len(scored) == 1:
            bump((labels[i], labels[scored[0][1]]))
            continue
        (c1neg, j1), (c2neg, j2) = scored[0], scored[1]
        l1, l2 = labels[j1], labels[j2]
        if l1 == l2:
            guesses = [l1]
        else:
            m = (-c1neg) - (-c2neg)
            if threshold > m:
                guesses = []
            elif threshold < -m:
                guesses = [l1, l2]
            else:
                guesses = [l1]
        if not guesses:
            bump((labels[i], None))
        for g in guesses:
            bump((labels[i], g))
    return confusion
