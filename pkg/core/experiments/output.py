"""
结果输出：RFC-4180 CSV 与单行 JSON 对象的 JSONL，字段名一致
"""
import csv
import json
import logging
import sys
from pathlib import Path
from typing import IO, Iterable, List, Optional

import pandas as pd

from core.exceptions import SchemaMismatchError
from data_models import ResultRow

logger = logging.getLogger(__name__)

FORMATS = ("csv", "jsonl")


def infer_format(path: Optional[str], default: str = "csv") -> str:
    if path and Path(path).suffix.lower() in (".jsonl", ".ndjson"):
        return "jsonl"
    return default


def write_stream(rows: Iterable[ResultRow], stream: IO[str], fmt: str = "csv") -> int:
    """写出表头与各行，返回行数"""
    count = 0
    if fmt == "jsonl":
        for row in rows:
            stream.write(row.model_dump_json() + "\n")
            count += 1
        return count
    writer = csv.DictWriter(stream, fieldnames=ResultRow.columns(), lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_record())
        count += 1
    return count


def write_rows(rows: Iterable[ResultRow], path: Optional[str] = None, fmt: str = "csv") -> int:
    """path 为空或 "-" 时写到标准输出"""
    if fmt not in FORMATS:
        raise ValueError(f"Unsupported output format: {fmt}")
    if not path or path == "-":
        count = write_stream(rows, sys.stdout, fmt)
        sys.stdout.flush()
        return count
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as f:
        count = write_stream(rows, f, fmt)
    logger.info(f"Wrote {count} rows to {target}")
    return count


def read_rows(path: str) -> List[ResultRow]:
    """按扩展名读取 CSV 或 JSONL；列与模式不一致时报 SchemaMismatchError"""
    if infer_format(path) == "jsonl":
        rows = []
        with open(path, "r", encoding="utf-8") as f:
            for number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                record = json.loads(line)
                if set(record) != set(ResultRow.columns()):
                    raise SchemaMismatchError(f"{path}:{number}: fields do not match the result schema")
                rows.append(ResultRow.from_record(record))
        return rows

    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    if list(frame.columns) != ResultRow.columns():
        missing = set(ResultRow.columns()) - set(frame.columns)
        extra = set(frame.columns) - set(ResultRow.columns())
        raise SchemaMismatchError(
            f"{path}: columns do not match the result schema (missing={sorted(missing)}, extra={sorted(extra)})"
        )
    return [ResultRow.from_record(record) for record in frame.to_dict(orient="records")]
