import struct
from pathlib import Path
from typing import Union

import numpy as np

from src.corrpath.cov_spec import CovSpec
from src.corrpath.path_pair import BROWNIAN, LATTICE, PathPair
from src.errors import DomainError, FormatError

MAGIC = b'PNLB'
VERSION = 1
# magic, version u16, kind u8, kappa' f64, alpha f64, dt f64, n u64; packed little-endian
HEADER = struct.Struct('<4sHBdddQ')
KIND_CODES = {BROWNIAN: 0, LATTICE: 1}
CODE_KINDS = {code: kind for kind, code in KIND_CODES.items()}
VALUES = np.dtype('<f8')


def save_path(path: PathPair, destination: Union[str, Path]):
    header = HEADER.pack(MAGIC, VERSION, KIND_CODES[path.kind], path.spec.kappa_prime, path.spec.alpha_scale,
                         path.dt, path.n)
    values = np.empty((path.n + 1, 2), dtype=VALUES)
    values[:, 0] = path.L
    values[:, 1] = path.R
    with open(destination, 'wb') as handle:
        handle.write(header)
        handle.write(values.tobytes())


def load_path(source: Union[str, Path]) -> PathPair:
    with open(source, 'rb') as handle:
        raw = handle.read()
    if len(raw) < HEADER.size:
        raise FormatError(f"truncated header: {len(raw)} of {HEADER.size} bytes", path=source, offset=len(raw))
    magic, version, kind_code, kappa_prime, alpha, dt, n = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}", path=source, offset=0)
    if version != VERSION:
        raise FormatError(f"unsupported version {version}", path=source, offset=4)
    if kind_code not in CODE_KINDS:
        raise FormatError(f"unknown path kind code {kind_code}", path=source, offset=6)
    expected = HEADER.size + (n + 1) * 2 * VALUES.itemsize
    if len(raw) != expected:
        raise FormatError(f"payload holds {len(raw)} bytes, header announces {expected}", path=source,
                          offset=min(len(raw), expected))
    values = np.frombuffer(raw, dtype=VALUES, offset=HEADER.size).reshape(n + 1, 2)
    try:
        spec = CovSpec(kappa_prime=kappa_prime, alpha_scale=alpha)
        return PathPair(spec=spec, dt=dt, L=values[:, 0].copy(), R=values[:, 1].copy(), kind=CODE_KINDS[kind_code])
    except DomainError as e:
        raise FormatError(f"invalid header field: {e}", path=source, offset=7)
