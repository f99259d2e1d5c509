"""Pure-Python cube scan; reference path and fallback for the compiled kernel.

For an input v (bit i of X is ``(v >> (nbits-1-i)) & 1``), anchor a with
scaled integer coordinates P[a] = L*a and ``sq[a] = |P[a]|^2`` gets the key

    key[a](X) = sq[a] - 2*L*(P[a] . X) = L^2 * (|X - a|^2 - |X|)

so keys order anchors exactly as squared distances do.
"""


def _half_tables(row, lo_bits, nbits):
    # dot products of one anchor against every assignment of the low/high bit halves
    hi_bits = nbits - lo_bits
    lo_w = row[hi_bits:]
    hi_w = row[:hi_bits]

    def table(ws):
        k = len(ws)
        out = [0] * (1 << k)
        for v in range(1, 1 << k):
            low = v & -v
            pos = low.bit_length() - 1  # bit pos counts from the right
            out[v] = out[v ^ low] + ws[k - 1 - pos]
        return out

    return table(lo_w), table(hi_w)


def scan_cube(points, sq, scale, labels, types, nbits):
    """Return (argmin, best_pos, best_neg, type_mask) lists over all 2**nbits inputs.

    ``best_pos``/``best_neg`` are None when that label class has no anchors.
    ``type_mask`` has bit t set when an anchor of type t attains the minimum.
    """
    K = len(points)
    lo_bits = nbits // 2
    lo_mask = (1 << lo_bits) - 1
    two_l = 2 * scale
    tables = [_half_tables(row, lo_bits, nbits) for row in points]
    lo_tabs = [t[0] for t in tables]
    hi_tabs = [t[1] for t in tables]
    pos_idx = [a for a in range(K) if labels[a] == 1]
    neg_idx = [a for a in range(K) if labels[a] == 0]
    type_bits = [(1 << t) if t is not None and t >= 0 else 0 for t in types]

    total = 1 << nbits
    argmin = [0] * total
    best_pos = [None] * total if not pos_idx else [0] * total
    best_neg = [None] * total if not neg_idx else [0] * total
    type_mask = [0] * total
    anchors = range(K)
    for v in range(total):
        lo = v & lo_mask
        hi = v >> lo_bits
        keys = [sq[a] - two_l * (lo_tabs[a][lo] + hi_tabs[a][hi]) for a in anchors]
        best = min(keys)
        first = keys.index(best)
        argmin[v] = first
        mask = 0
        for a in anchors:
            if keys[a] == best:
                mask |= type_bits[a]
        type_mask[v] = mask
        if pos_idx:
            best_pos[v] = min(keys[a] for a in pos_idx)
        if neg_idx:
            best_neg[v] = min(keys[a] for a in neg_idx)
    return argmin, best_pos, best_neg, type_mask
