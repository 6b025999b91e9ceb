"""Variable-width LZW codec (Welch 1984, ``compress``-style code growth).

Codes start at 9 bits and widen up to 16. Code 256 is a CLEAR marker
emitted once the dictionary holds 2**16 entries; both sides then restart
from the 256 single-byte roots. Codes are packed MSB-first and the last
byte is zero-padded.
"""

CLEAR = 256
FIRST_FREE = 257
MIN_WIDTH = 9
MAX_WIDTH = 16
MAX_ENTRIES = 1 << MAX_WIDTH


class LZWError(ValueError):
    pass


def _width(max_code):
    return min(MAX_WIDTH, max(MIN_WIDTH, max_code.bit_length()))


def compress(data: bytes) -> bytes:
    """Compress ``data``; raises :class:`LZWError` on an empty payload."""
    if not data:
        raise LZWError("cannot LZW-compress an empty payload")

    out = bytearray()
    acc = 0
    nacc = 0
    # (prefix_code << 8 | byte) -> code
    table = {}
    next_code = FIRST_FREE

    def emit(code):
        nonlocal acc, nacc
        width = _width(next_code - 1)
        acc = (acc << width) | code
        nacc += width
        while nacc >= 8:
            nacc -= 8
            out.append((acc >> nacc) & 0xFF)
        acc &= (1 << nacc) - 1

    w = data[0]
    for c in data[1:]:
        key = (w << 8) | c
        code = table.get(key)
        if code is not None:
            w = code
            continue
        emit(w)
        if next_code < MAX_ENTRIES:
            table[key] = next_code
            next_code += 1
        else:
            emit(CLEAR)
            table = {}
            next_code = FIRST_FREE
        w = c
    emit(w)
    if nacc:
        out.append((acc << (8 - nacc)) & 0xFF)
    return bytes(out)


def decompress(blob: bytes) -> bytes:
    """Inverse of :func:`compress`. Out-of-range codes raise :class:`LZWError`."""
    out = bytearray()
    entries = [bytes([i]) for i in range(256)] + [b""]
    prev = None
    acc = 0
    nacc = 0
    stream = iter(blob)

    while True:
        # the decoder's table lags the encoder's by one entry
        width = _width(len(entries))
        while nacc < width:
            byte = next(stream, None)
            if byte is None:
                break
            acc = ((acc << 8) | byte) & 0xFFFFFF
            nacc += 8
        if nacc < width:
            break
        nacc -= width
        code = (acc >> nacc) & ((1 << width) - 1)

        if code == CLEAR:
            if prev is None:
                raise LZWError("CLEAR code at start of stream")
            entries = entries[:FIRST_FREE]
            prev = None
            continue
        if code < len(entries) and code != CLEAR:
            entry = entries[code]
        elif code == len(entries) and prev is not None:
            entry = prev + prev[:1]
        else:
            raise LZWError(f"LZW code {code} out of range (table size {len(entries)})")
        if prev is not None and len(entries) < MAX_ENTRIES:
            entries.append(prev + entry[:1])
        out += entry
        prev = entry

    if prev is None and blob:
        raise LZWError("LZW stream holds no codes")
    return bytes(out)
