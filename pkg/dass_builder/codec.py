"""
Binary tree files.

Layout: the magic line ``SIMCHAOS-DASS``, one JSON header line, then per level
a run-length encoded cluster-id raster followed by its label table. Integers
are little-endian uint32; raster values are stored as cluster id + 1 so that
0 marks cells that did not survive.
"""

import json
from pathlib import Path

import numpy as np
import pandas as pd

from dass_builder.maps import MapSpec
from dass_builder.tree import LABEL_COLUMNS, DassLevel, DassTree
from utils.errors import TreeFormatError

MAGIC = b"SIMCHAOS-DASS\n"
FORMAT_VERSION = 1
_U32 = np.dtype("<u4")


def _encode_runs(raster):
    flat = (raster.ravel().astype(np.int64) + 1).astype(_U32)
    starts = np.concatenate([[0], np.flatnonzero(np.diff(flat)) + 1])
    lengths = np.diff(np.concatenate([starts, [flat.size]]))
    return flat[starts], lengths.astype(_U32)


def _decode_runs(values, lengths, shape):
    flat = np.repeat(values.astype(np.int64), lengths.astype(np.int64))
    if flat.size != int(np.prod(shape)):
        raise TreeFormatError(f"run lengths cover {flat.size} cells, raster has {int(np.prod(shape))}")
    return (flat - 1).astype(np.int32).reshape(shape)


def _u32(value):
    return np.array([value], dtype=_U32).tobytes()


def _label_json(labels):
    rows = [
        {
            "cluster": int(row.cluster),
            "word": [int(d) for d in row.word],
            "parent": int(row.parent),
            "image": int(row.image),
            "cells": int(row.cells),
            "row_min": int(row.row_min),
            "col_min": int(row.col_min),
        }
        for row in labels.itertuples(index=False)
    ]
    return json.dumps(rows, sort_keys=True).encode("utf-8")


def tree_to_bytes(tree):
    header = {
        "version": FORMAT_VERSION,
        "spec": tree.spec.to_dict(),
        "h": tree.h,
        "depth": tree.depth,
        "shape": list(tree.shape),
        "origin": list(tree.origin),
    }
    chunks = [MAGIC, json.dumps(header, sort_keys=True).encode("utf-8"), b"\n"]
    for level in tree.levels:
        values, lengths = _encode_runs(level.raster)
        labels = _label_json(level.labels)
        chunks += [_u32(len(values)), values.tobytes(), lengths.tobytes(), _u32(len(labels)), labels]
    return b"".join(chunks)


class _Reader:
    def __init__(self, data, offset):
        self.data = data
        self.offset = offset

    def take(self, size):
        if self.offset + size > len(self.data):
            raise TreeFormatError("tree file is truncated")
        chunk = self.data[self.offset : self.offset + size]
        self.offset += size
        return chunk

    def u32_array(self, count):
        return np.frombuffer(self.take(count * _U32.itemsize), dtype=_U32)

    def u32(self):
        return int(self.u32_array(1)[0])


def tree_from_bytes(data):
    if not data.startswith(MAGIC):
        raise TreeFormatError("not a simchaos tree file")
    end = data.find(b"\n", len(MAGIC))
    if end < 0:
        raise TreeFormatError("missing header line")
    try:
        header = json.loads(data[len(MAGIC) : end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise TreeFormatError(f"bad header: {exc}") from exc
    if header.get("version") != FORMAT_VERSION:
        raise TreeFormatError(f"unsupported tree format version {header.get('version')}")

    shape = tuple(header["shape"])
    tree = DassTree(
        spec=MapSpec.from_dict(header["spec"]),
        h=header["h"],
        depth=header["depth"],
        shape=shape,
        origin=tuple(header["origin"]),
        levels=[],
    )
    reader = _Reader(data, end + 1)
    for k in range(1, tree.depth + 1):
        runs = reader.u32()
        values = reader.u32_array(runs)
        lengths = reader.u32_array(runs)
        raster = _decode_runs(values, lengths, shape)
        try:
            rows = json.loads(reader.take(reader.u32()).decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise TreeFormatError(f"bad label table at level {k}: {exc}") from exc
        labels = pd.DataFrame(rows, columns=LABEL_COLUMNS)
        labels["word"] = pd.Series([tuple(r["word"]) for r in rows], index=labels.index, dtype=object)
        tree.levels.append(DassLevel(k, raster, labels))
    if reader.offset != len(data):
        raise TreeFormatError("trailing bytes after the last level")
    return tree


def write_tree(tree, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(tree_to_bytes(tree))


def read_tree(path):
    return tree_from_bytes(Path(path).read_bytes())
