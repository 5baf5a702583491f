from utils.errors import ResourceCapError

DEFAULT_CAP = 1 << 20


def debruijn_sequence(m, n):
    """
    Cyclic de Bruijn sequence B(m, n) by concatenating Lyndon words.

    Every length-n word over ``range(m)`` occurs exactly once cyclically.
    """
    a = [0] * (m * n)
    sequence = []

    def db(t, p):
        if t > n:
            if n % p == 0:
                sequence.extend(a[1 : p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, m):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return sequence


def debruijn_transitive_prefix(m, L, cap=DEFAULT_CAP):
    """
    Digit list containing every block of length <= L as a contiguous substring.

    The cyclic B(m, L) is linearized by appending its first L - 1 digits; every
    shorter block is the start of some length-L block, so one sequence covers
    all lengths.

    Args:
        m (int): Alphabet size, at least 2.
        L (int): Longest block length, at least 1.
        cap (int): Largest allowed m**L.

    Returns:
        list[int]: The digits, of length m**L + L - 1.
    """
    if m < 2 or L < 1:
        raise ValueError(f"need m >= 2 and L >= 1, got m={m}, L={L}")
    if m**L > cap:
        raise ResourceCapError(f"{m}^{L} blocks exceed the cap of {cap}")
    cyclic = debruijn_sequence(m, L)
    return cyclic + cyclic[: L - 1]


def contains_all_blocks(sequence, m, L):
    """Brute-force check that every block over ``range(m)`` of length <= L occurs."""
    sequence = tuple(sequence)
    for length in range(1, L + 1):
        seen = {sequence[i : i + length] for i in range(len(sequence) - length + 1)}
        valid = [block for block in seen if all(0 <= d < m for d in block)]
        if len(valid) < m**length:
            return False
    return True
