"""Parts list and cost engine for the physical build.

Money is integer euro cents throughout; no floating point enters this
module, so totals are exact and order-independent. The embedded catalog is
the cheapest-color shopping list for the 24-piece build: bricks, the two
slide tiles, the 15-hole beam the pen clamps to, pins, and the base plate.
The pen refill is bought separately and is not a catalog line.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

CATALOG_HEADER = ("part_id", "name", "unit_price_cents", "quantity")


class CatalogError(ValueError):
    """Base class for catalog parsing and validation failures."""


class MalformedRow(CatalogError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class DuplicatePart(CatalogError):
    def __init__(self, part_id: str):
        super().__init__(f"duplicate part_id {part_id!r}")
        self.part_id = part_id


class NegativeValue(CatalogError):
    """Price below zero or quantity below one."""


@dataclass(frozen=True)
class PartLine:
    """One catalog line: design number, name, unit price in euro cents,
    and how many the build needs."""

    part_id: str
    name: str
    unit_price_cents: int
    quantity: int

    def __post_init__(self) -> None:
        if not self.part_id:
            raise ValueError("part_id must be non-empty")
        if not isinstance(self.unit_price_cents, int) or isinstance(self.unit_price_cents, bool):
            raise ValueError(f"unit_price_cents must be an integer, got {self.unit_price_cents!r}")
        if not isinstance(self.quantity, int) or isinstance(self.quantity, bool):
            raise ValueError(f"quantity must be an integer, got {self.quantity!r}")
        if self.unit_price_cents < 0:
            raise NegativeValue(f"unit price must be >= 0, got {self.unit_price_cents}")
        if self.quantity < 1:
            raise NegativeValue(f"quantity must be >= 1, got {self.quantity}")

    @property
    def line_total_cents(self) -> int:
        return self.unit_price_cents * self.quantity


@dataclass(frozen=True)
class Bom:
    """An ordered bill of materials with unique part ids."""

    lines: tuple[PartLine, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for line in self.lines:
            if line.part_id in seen:
                raise DuplicatePart(line.part_id)
            seen.add(line.part_id)


def default_catalog() -> Bom:
    """The embedded 24-part shopping list (cheapest-color brickowl prices)."""
    return Bom(
        lines=(
            PartLine("3005", "Brick 1x1", 1, 2),
            PartLine("3004", "Brick 1x2", 1, 2),
            PartLine("3009", "Brick 1x6", 1, 5),
            PartLine("3001", "Brick 2x4", 1, 4),
            PartLine("3008", "Brick 1x8", 1, 3),
            PartLine("2431", "Flat tile 1x4", 1, 2),
            PartLine("32278", "Beam 15M", 9, 1),
            PartLine("2780", "Pin", 1, 4),
            PartLine("6098", "Base plate 16x16", 66, 1),
        )
    )


def totals(b: Bom) -> tuple[int, int]:
    """(total part count, total cost in euro cents)."""
    return (
        sum(line.quantity for line in b.lines),
        sum(line.line_total_cents for line in b.lines),
    )


def format_eur(cents: int) -> str:
    """Integer cents as a decimal euro amount, e.g. 97 -> '0.97'."""
    sign = "-" if cents < 0 else ""
    cents = abs(cents)
    return f"{sign}{cents // 100}.{cents % 100:02d}"


def load_catalog(text: str) -> Bom:
    """Parse a catalog CSV (header part_id,name,unit_price_cents,quantity).

    Raises MalformedRow with the 1-based line number, DuplicatePart, or
    NegativeValue on invalid content.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRow("empty catalog, header line required", line_number=1)
    if tuple(header) != CATALOG_HEADER:
        raise MalformedRow(
            f"expected header {','.join(CATALOG_HEADER)!r}, got {','.join(header)!r}",
            line_number=1,
        )
    lines: list[PartLine] = []
    for row_number, row in enumerate(reader, start=2):
        if not row:
            continue  # ignore blank lines
        if len(row) != 4:
            raise MalformedRow(f"expected 4 fields, got {len(row)}", line_number=row_number)
        part_id, name, price_text, quantity_text = row
        try:
            price = int(price_text)
            quantity = int(quantity_text)
        except ValueError:
            raise MalformedRow(
                f"unit_price_cents and quantity must be integers, got "
                f"{price_text!r}, {quantity_text!r}",
                line_number=row_number,
            )
        lines.append(PartLine(part_id, name, price, quantity))
    return Bom(lines=tuple(lines))


def save_catalog(b: Bom) -> str:
    """Canonical catalog CSV: UTF-8 text, LF line endings; round-trips
    byte-identically through load_catalog."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CATALOG_HEADER)
    for line in b.lines:
        writer.writerow([line.part_id, line.name, line.unit_price_cents, line.quantity])
    return buf.getvalue()
