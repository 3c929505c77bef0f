"""
权重场二进制读写

布局：头部 magic "LPPF"、版本 u32、width u32、height u32、seed u64、
分布标签 u32、形状 f64、速率 f64（均为小端），随后是行主序的小端 f64 权重。
"""
import logging
import struct
from pathlib import Path

import numpy as np

from core.distributions import WeightDistribution, WeightKind
from core.exceptions import FieldFormatError
from .field import WeightField, allocate

logger = logging.getLogger(__name__)

MAGIC = b"LPPF"
VERSION = 1
_HEADER = struct.Struct("<4sIIIQIdd")

# 标签0保留给没有分布描述的人工场
_TAGS = {None: 0, WeightKind.EXPONENTIAL: 1, WeightKind.GAMMA: 2}
_KINDS = {tag: kind for kind, tag in _TAGS.items()}


def dump_field(field: WeightField, path) -> int:
    """写入文件，返回写入的字节数"""
    dist = field.distribution
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        field.width,
        field.height,
        field.seed if field.seed is not None else 0,
        _TAGS[dist.kind if dist is not None else None],
        dist.shape if dist is not None else 0.0,
        dist.rate if dist is not None else 0.0,
    )
    payload = np.ascontiguousarray(field.weights, dtype="<f8").tobytes()
    Path(path).write_bytes(header + payload)
    logger.info(f"Dumped {field.width}x{field.height} field to {path}")
    return len(header) + len(payload)


def load_field(path) -> WeightField:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise FieldFormatError(f"{path}: truncated header")
    magic, version, width, height, seed, tag, shape, rate = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FieldFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FieldFormatError(f"{path}: unsupported version {version}")
    if tag not in _KINDS:
        raise FieldFormatError(f"{path}: unknown distribution tag {tag}")

    expected = (width + 1) * (height + 1) * 8
    body = data[_HEADER.size:]
    if len(body) != expected:
        raise FieldFormatError(f"{path}: expected {expected} weight bytes, found {len(body)}")

    weights = allocate(width, height)
    weights[:] = np.frombuffer(body, dtype="<f8").reshape(width + 1, height + 1)

    kind = _KINDS[tag]
    if kind is None:
        return WeightField(width, height, weights, None, None)
    dist = WeightDistribution(kind, rate, shape if kind is WeightKind.GAMMA else 1.0)
    return WeightField(width, height, weights, seed, dist)
