"""Age <-> cumulative-utterance conversion.

A child's linguistic exposure is modeled from a waking-hours schedule:
six age ranges from birth to 5;0, each with linearly growing daily waking
hours, and a flat rate of 487 caregiver utterances per waking hour.  The
utterance total for a completed range is the trapezoid area of the
waking-hours line times 365 days times the rate, rounded to the nearest
integer (ties to even); a partial range at the top of the sum is rounded
up instead.  This exact rounding split is what reproduces the published
per-range and cumulative integers simultaneously; see tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

UTTERANCES_PER_HOUR = 487
DAYS_PER_YEAR = 365


class CalendarError(ValueError):
    """Raised for ages or utterance counts outside the calendar."""


@dataclass(frozen=True)
class AgeRange:
    """One age span with waking hours at its two endpoints."""

    start_age: float
    end_age: float
    waking_start: float
    waking_end: float

    def __post_init__(self):
        if not self.start_age < self.end_age:
            raise ValueError("start_age must be < end_age")
        for h in (self.waking_start, self.waking_end):
            if not 0.0 < h < 24.0:
                raise ValueError("waking hours must lie in (0, 24)")

    @property
    def years(self) -> float:
        return self.end_age - self.start_age


@dataclass(frozen=True)
class Calendar:
    """An ordered, contiguous list of age ranges plus the utterance rate."""

    ranges: tuple[AgeRange, ...]
    rate: float = UTTERANCES_PER_HOUR

    def __post_init__(self):
        if not self.ranges:
            raise ValueError("calendar needs at least one range")
        if self.rate <= 0:
            raise ValueError("rate must be positive")
        prev = None
        for r in self.ranges:
            if prev is not None:
                if r.start_age != prev.end_age:
                    raise ValueError("ranges must be contiguous")
                if r.waking_start != prev.waking_end:
                    raise ValueError("adjacent waking-hour endpoints must agree")
            prev = r

    @property
    def start_age(self) -> float:
        return self.ranges[0].start_age

    @property
    def end_age(self) -> float:
        return self.ranges[-1].end_age

    @property
    def total_utterances(self) -> int:
        return sum(utterances_in_range(r, self.rate) for r in self.ranges)

    @classmethod
    def from_file(cls, path) -> "Calendar":
        """Load an override calendar.

        Format: '#' comments, one ``rate = <value>`` line, and one
        ``range = start,end,waking_start,waking_end`` line per range.
        """
        rate = UTTERANCES_PER_HOUR
        ranges = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                key, _, value = line.partition("=")
                key = key.strip()
                value = value.strip()
                try:
                    if key == "rate":
                        rate = float(value)
                    elif key == "range":
                        a, b, h1, h2 = (float(x) for x in value.split(","))
                        ranges.append(AgeRange(a, b, h1, h2))
                    else:
                        raise ValueError(f"unknown key {key!r}")
                except ValueError as exc:
                    raise CalendarError(f"{path}:{lineno}: {exc}") from exc
        return cls(tuple(ranges), rate)


#: The built-in schedule: waking hours 8.5 at birth growing to 13 by age 5.
DEFAULT_CALENDAR = Calendar(
    (
        AgeRange(0.0, 0.5, 8.5, 9.5),
        AgeRange(0.5, 1.0, 9.5, 10.25),
        AgeRange(1.0, 2.0, 10.25, 11.0),
        AgeRange(2.0, 3.0, 11.0, 12.0),
        AgeRange(3.0, 4.0, 12.0, 12.5),
        AgeRange(4.0, 5.0, 12.5, 13.0),
    )
)

#: Utterances heard by age 5;0 under the default calendar.
TOTAL_UTTERANCES_AT_FIVE = DEFAULT_CALENDAR.total_utterances


def total_waking_hours(age_range: AgeRange) -> float:
    """Waking hours accumulated over a full age range (trapezoid rule)."""
    mean_hours = (age_range.waking_start + age_range.waking_end) / 2.0
    return mean_hours * age_range.years * DAYS_PER_YEAR


def utterances_in_range(age_range: AgeRange, rate: float = UTTERANCES_PER_HOUR) -> int:
    """Utterances heard over a full age range, rounded to nearest (ties to even)."""
    return round(total_waking_hours(age_range) * rate)


def _waking_hours_at(age: float, r: AgeRange) -> float:
    frac = (age - r.start_age) / r.years
    return r.waking_start + frac * (r.waking_end - r.waking_start)


def cumulative_utterances(age: float, calendar: Calendar = DEFAULT_CALENDAR) -> int:
    """Total utterances heard from birth to ``age``.

    Completed ranges contribute their rounded totals; the final partial
    range is rounded up once at its end.
    """
    if not calendar.start_age <= age <= calendar.end_age:
        raise CalendarError(
            f"age {age} outside calendar [{calendar.start_age}, {calendar.end_age}]"
        )
    total = 0
    for r in calendar.ranges:
        if age >= r.end_age:
            total += utterances_in_range(r, calendar.rate)
        elif age > r.start_age:
            h_at = _waking_hours_at(age, r)
            hours = (r.waking_start + h_at) / 2.0 * (age - r.start_age) * DAYS_PER_YEAR
            total += math.ceil(hours * calendar.rate)
            break
        else:
            break
    return total


def age_at_utterance(u: int, calendar: Calendar = DEFAULT_CALENDAR) -> float:
    """Inverse of :func:`cumulative_utterances`, accurate to one utterance.

    Solves the quadratic partial-range sum analytically inside the range
    that contains ``u``.
    """
    if not 0 <= u <= calendar.total_utterances:
        raise CalendarError(
            f"utterance count {u} outside [0, {calendar.total_utterances}]"
        )
    cum = 0
    for r in calendar.ranges:
        in_range = utterances_in_range(r, calendar.rate)
        if u <= cum + in_range:
            delta = u - cum
            # (365*rate) * (h1*da + slope*da^2/2) = delta, da in years
            c = delta / (DAYS_PER_YEAR * calendar.rate)
            slope = (r.waking_end - r.waking_start) / r.years
            h1 = r.waking_start
            if slope == 0.0:
                da = c / h1
            else:
                da = (-h1 + math.sqrt(h1 * h1 + 2.0 * slope * c)) / slope
            da = min(max(da, 0.0), r.years)
            return r.start_age + da
        cum += in_range
    return calendar.end_age
