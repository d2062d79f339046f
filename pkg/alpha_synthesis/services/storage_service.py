"""
Persistance des résultats.

Ce module fournit :
- le format binaire NCFK (noyaux, fonctions planes, fonctions sur la droite)
- l'écriture atomique des rapports JSON et des tableaux CSV

Disposition NCFK (petit-boutiste) :
  "NCFK" | version u32 | kind u8 | rows u32 | cols u32 | pas f64 (1 ou 2)
  | charge utile rows x cols complexes (re, im) f64, ligne par ligne
"""
from __future__ import annotations

import csv
import io
import json
import os
import struct
import tempfile
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from alpha_synthesis.models import (
	DecayTable,
	KernelOperator,
	LineGrid,
	PlaneFunction,
	PlaneGrid,
	Report,
	SampledFunction1D,
)
from alpha_synthesis.utils.validators import NCFKFormatError

MAGIC = b"NCFK"
VERSION = 1
KIND_KERNEL = 1
KIND_PLANE = 2
KIND_LINE = 3

_HEADER = struct.Struct("<4sIBII")
_PAYLOAD_DTYPE = np.dtype("<c16")

NCFKObject = Union[KernelOperator, PlaneFunction, SampledFunction1D]


# Écriture atomique

def _write_atomic(path: Path, data: bytes) -> None:
	"""Écrit dans un fichier temporaire voisin puis le renomme."""
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
	try:
		with os.fdopen(fd, "wb") as f:
			f.write(data)
		os.replace(tmp, path)
	except BaseException:
		if os.path.exists(tmp):
			os.unlink(tmp)
		raise


def write_json(path: Path, data: dict) -> None:
	text = json.dumps(data, ensure_ascii=False, indent=2)
	_write_atomic(path, (text + "\n").encode("utf-8"))


def read_json(path: Path) -> dict:
	with open(path, "r", encoding="utf-8") as f:
		return json.load(f)


def write_report(path: Path, report: Report) -> None:
	write_json(path, report.to_dict())


def read_report(path: Path) -> Report:
	return Report.from_dict(read_json(path))


def _format_cell(value) -> str:
	if isinstance(value, float):
		return repr(value)
	return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
	"""CSV avec en-tête ; les flottants sont écrits avec repr (aller-retour exact)."""
	buffer = io.StringIO()
	writer = csv.writer(buffer, lineterminator="\n")
	writer.writerow(header)
	for row in rows:
		writer.writerow([_format_cell(v) for v in row])
	_write_atomic(path, buffer.getvalue().encode("utf-8"))


def write_decay_table(path: Path, table: DecayTable) -> None:
	write_csv(path, DecayTable.COLUMNS, (row.as_tuple() for row in table))


# Format NCFK

def _describe(obj: NCFKObject) -> tuple[int, int, int, tuple[float, ...], np.ndarray]:
	if isinstance(obj, KernelOperator):
		n = obj.grid.n
		return KIND_KERNEL, n, n, (obj.grid.h,), obj.kernel
	if isinstance(obj, PlaneFunction):
		rows, cols = obj.grid.shape
		return KIND_PLANE, rows, cols, (obj.grid.xgrid.h, obj.grid.ygrid.h), obj.values
	if isinstance(obj, SampledFunction1D):
		return KIND_LINE, 1, obj.grid.n, (obj.grid.h,), obj.values
	raise NCFKFormatError(f"type non sérialisable en NCFK : {type(obj).__name__}")


def encode_ncfk(obj: NCFKObject) -> bytes:
	kind, rows, cols, spacings, values = _describe(obj)
	header = _HEADER.pack(MAGIC, VERSION, kind, rows, cols)
	steps = struct.pack(f"<{len(spacings)}d", *spacings)
	payload = np.ascontiguousarray(values, dtype=_PAYLOAD_DTYPE).tobytes()
	return header + steps + payload


def decode_ncfk(data: bytes) -> NCFKObject:
	if len(data) < _HEADER.size:
		raise NCFKFormatError("fichier NCFK tronqué (en-tête)")
	magic, version, kind, rows, cols = _HEADER.unpack_from(data, 0)
	if magic != MAGIC:
		raise NCFKFormatError(f"signature invalide : {magic!r}")
	if version != VERSION:
		raise NCFKFormatError(f"version NCFK non supportée : {version}")
	if kind not in (KIND_KERNEL, KIND_PLANE, KIND_LINE):
		raise NCFKFormatError(f"type NCFK inconnu : {kind}")
	count = 2 if kind == KIND_PLANE else 1
	offset = _HEADER.size
	if len(data) < offset + 8 * count:
		raise NCFKFormatError("fichier NCFK tronqué (pas de grille)")
	spacings = struct.unpack_from(f"<{count}d", data, offset)
	offset += 8 * count
	expected = 16 * rows * cols
	if len(data) - offset != expected:
		raise NCFKFormatError(f"charge utile de {len(data) - offset} octets, attendu {expected}")
	values = np.frombuffer(data, dtype=_PAYLOAD_DTYPE, offset=offset).reshape(rows, cols)
	try:
		if kind == KIND_KERNEL:
			if rows != cols:
				raise NCFKFormatError(f"noyau non carré : {rows} x {cols}")
			return KernelOperator(LineGrid(rows, spacings[0]), values)
		if kind == KIND_PLANE:
			grid = PlaneGrid(LineGrid(rows, spacings[0]), LineGrid(cols, spacings[1]))
			return PlaneFunction(grid, values)
		if rows != 1:
			raise NCFKFormatError(f"fonction 1D avec {rows} lignes")
		return SampledFunction1D(LineGrid(cols, spacings[0]), values[0])
	except ValueError as exc:
		raise NCFKFormatError(f"grille NCFK invalide : {exc}") from exc


def write_ncfk(path: Path, obj: NCFKObject) -> None:
	_write_atomic(path, encode_ncfk(obj))


def read_ncfk(path: Path) -> NCFKObject:
	with open(path, "rb") as f:
		return decode_ncfk(f.read())
