"""
Concept hashing and path-key packing.

``string_hash31`` is the classic ``s[0]*31^(n-1) + ... + s[n-1]`` string hash
over UTF-16 code units with wrapping signed 32-bit arithmetic. A HashPath is
the sequence of absolute hash values of a ConceptPath, and a PathKey packs a
HashPath into one integer of fixed 32-bit big-endian digits.
"""

_MASK32 = 0xFFFFFFFF
_DIGIT_BITS = 32


def _utf16_units(s):
    data = s.encode("utf-16-be", "surrogatepass")
    return ((data[i] << 8) | data[i + 1] for i in range(0, len(data), 2))


def string_hash31(s):
    """
    >>> string_hash31("")
    0
    >>> string_hash31("a")
    97
    >>> string_hash31("polygenelubricants")
    -2147483648
    """
    h = 0
    for unit in _utf16_units(s):
        h = (31 * h + unit) & _MASK32
    return h - (1 << 32) if h & 0x80000000 else h


def hash_code(concept):
    """Absolute value of the concept's hash; ``-2**31`` becomes ``2**31``."""
    return abs(string_hash31(concept))


def hash_path(path):
    return tuple(hash_code(node) for node in path)


def encode_path_key(codes):
    """
    Pack hash codes into one integer, most significant digit first.

    >>> encode_path_key([])
    0
    >>> encode_path_key([2, 3])
    8589934595
    """
    value = 0
    for code in codes:
        if not 0 <= code <= 1 << 31:
            raise ValueError("hash code {0} out of range".format(code))
        value = (value << _DIGIT_BITS) | code
    return value


def decode_path_key(key, length):
    """Inverse of :func:`encode_path_key` for a path of ``length`` nodes."""
    if key < 0 or key >> (_DIGIT_BITS * length):
        raise ValueError("path key {0} does not hold {1} digits".format(key, length))
    codes = []
    for _ in range(length):
        codes.append(key & _MASK32)
        key >>= _DIGIT_BITS
    return tuple(reversed(codes))
