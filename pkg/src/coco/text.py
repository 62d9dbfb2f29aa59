"""Line-oriented diff, patch, and three-way merge primitives.

A document is an immutable sequence of lines plus a flag recording whether
the original bytes ended with a newline, so content survives a
normalize/render round trip byte-for-byte (CRLF is folded to LF on ingest).
Edits are hunks against a base document; two edit sets merge automatically
when no hunk pair from opposite sides touches the same or adjacent base
lines, and otherwise the merge reports the colliding regions.

Everything here is a pure function over frozen values and is safe to call
concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import EncodingError, PatchRangeError


@dataclass(frozen=True)
class Document:
    """Normalized text content of one shared file."""

    lines: tuple[str, ...] = ()
    final_newline: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "lines", tuple(self.lines))
        for line in self.lines:
            if "\n" in line:
                raise ValueError("document lines must not embed line separators")
        if self.final_newline and not self.lines:
            raise ValueError("an empty document cannot end with a newline")

    def render(self) -> str:
        text = "\n".join(self.lines)
        if self.final_newline:
            text += "\n"
        return text

    def to_bytes(self) -> bytes:
        return self.render().encode("utf-8")


EMPTY_DOCUMENT = Document()


@dataclass(frozen=True)
class Hunk:
    """One contiguous edit: remove ``base_len`` lines at ``base_start``,
    insert ``replacement`` in their place."""

    base_start: int
    base_len: int
    replacement: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "replacement", tuple(self.replacement))
        if self.base_start < 0 or self.base_len < 0:
            raise ValueError("hunk range must be nonnegative")
        if self.base_len == 0 and not self.replacement:
            raise ValueError("hunk must remove or insert something")
        for line in self.replacement:
            if "\n" in line:
                raise ValueError("replacement lines must not embed line separators")

    @property
    def base_end(self) -> int:
        return self.base_start + self.base_len


@dataclass(frozen=True)
class Changeset:
    """Ordered, non-overlapping hunks plus the final-newline state of the
    document they produce."""

    hunks: tuple[Hunk, ...] = ()
    final_newline: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "hunks", tuple(self.hunks))
        prev = None
        for hunk in self.hunks:
            if prev is not None:
                if hunk.base_start <= prev.base_start or hunk.base_start < prev.base_end:
                    raise ValueError("hunks must be sorted and non-overlapping")
            prev = hunk

    @property
    def is_empty(self) -> bool:
        return not self.hunks

    def line_count(self) -> int:
        """Total lines removed plus lines inserted, the edit size."""
        return sum(h.base_len + len(h.replacement) for h in self.hunks)


@dataclass(frozen=True)
class ConflictRegion:
    """A base range both sides edited, with each side's replacement."""

    base_start: int
    base_len: int
    ours: tuple[str, ...] = ()
    theirs: tuple[str, ...] = ()


@dataclass(frozen=True)
class MergeOutcome:
    """Either a merged document or the list of colliding regions."""

    document: Document | None = None
    conflicts: tuple[ConflictRegion, ...] = ()

    def __post_init__(self) -> None:
        if (self.document is None) == (not self.conflicts):
            raise ValueError("outcome must be merged or conflicted, not both")

    @property
    def merged(self) -> bool:
        return self.document is not None


def normalize(raw: bytes | str) -> Document:
    """Decode and split raw content into a Document.

    CRLF becomes LF before splitting; whether the content ended with a
    newline is kept so rendering reproduces the input bytes.
    """
    if isinstance(raw, bytes):
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"content is not valid UTF-8: {exc}") from exc
    else:
        text = raw
    text = text.replace("\r\n", "\n")
    if text == "":
        return EMPTY_DOCUMENT
    if text.endswith("\n"):
        return Document(tuple(text[:-1].split("\n")), True)
    return Document(tuple(text.split("\n")), False)


def _common_prefix(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def _common_suffix(a: tuple[str, ...], b: tuple[str, ...], prefix: int) -> int:
    n = min(len(a), len(b)) - prefix
    i = 0
    while i < n and a[len(a) - 1 - i] == b[len(b) - 1 - i]:
        i += 1
    return i


def _myers_matches(a: list[str], b: list[str]) -> list[tuple[int, int]]:
    """Matched index pairs of a minimal edit script between two line lists."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return []
    offset = n + m
    v = [0] * (2 * offset + 1)
    trace: list[list[int]] = []
    found_d = -1
    for d in range(n + m + 1):
        trace.append(v.copy())
        for k in range(-d, d + 1, 2):
            ki = k + offset
            if k == -d or (k != d and v[ki - 1] < v[ki + 1]):
                x = v[ki + 1]
            else:
                x = v[ki - 1] + 1
            y = x - k
            while x < n and y < m and a[x] == b[y]:
                x += 1
                y += 1
            v[ki] = x
            if x >= n and y >= m:
                found_d = d
                break
        if found_d >= 0:
            break

    matches: list[tuple[int, int]] = []
    x, y = n, m
    for d in range(found_d, 0, -1):
        vp = trace[d]
        k = x - y
        ki = k + offset
        if k == -d or (k != d and vp[ki - 1] < vp[ki + 1]):
            pk = k + 1
        else:
            pk = k - 1
        px = vp[pk + offset]
        py = px - pk
        move_x = px + 1 if pk == k - 1 else px
        move_y = move_x - k
        while x > move_x and y > move_y:
            x -= 1
            y -= 1
            matches.append((x, y))
        x, y = px, py
    while x > 0 and y > 0:
        x -= 1
        y -= 1
        matches.append((x, y))
    matches.reverse()
    return matches


def diff(base: Document, modified: Document) -> Changeset:
    """Minimal line-level changeset turning ``base`` into ``modified``."""
    a, b = base.lines, modified.lines
    prefix = _common_prefix(a, b)
    suffix = _common_suffix(a, b, prefix)
    mid_a = list(a[prefix : len(a) - suffix])
    mid_b = list(b[prefix : len(b) - suffix])

    hunks: list[Hunk] = []
    px = py = 0
    for x, y in _myers_matches(mid_a, mid_b) + [(len(mid_a), len(mid_b))]:
        if x > px or y > py:
            hunks.append(Hunk(prefix + px, x - px, tuple(mid_b[py:y])))
        px, py = x + 1, y + 1
    return Changeset(tuple(hunks), modified.final_newline)


def _check_bounds(cs: Changeset, base: Document) -> None:
    for hunk in cs.hunks:
        if hunk.base_end > len(base.lines):
            raise PatchRangeError(
                f"hunk at {hunk.base_start}+{hunk.base_len} exceeds "
                f"{len(base.lines)}-line base"
            )


def apply(base: Document, cs: Changeset) -> Document:
    """Apply a changeset to the base it was computed against.

    Hunks are applied back to front so earlier offsets stay valid.
    """
    _check_bounds(cs, base)
    lines = list(base.lines)
    for hunk in reversed(cs.hunks):
        lines[hunk.base_start : hunk.base_end] = hunk.replacement
    return Document(tuple(lines), cs.final_newline and bool(lines))


def hunks_overlap(a: Hunk, b: Hunk) -> bool:
    """True when two hunks against one base touch the same or adjacent lines.

    A pure insertion occupies one virtual slot, and ranges that share a
    boundary count as overlapping, so automatic merges never interleave
    edits in touching regions.
    """
    a_end = a.base_start + max(a.base_len, 1)
    b_end = b.base_start + max(b.base_len, 1)
    return a.base_start <= b_end and b.base_start <= a_end


def _clusters(ours: Changeset, theirs: Changeset) -> list[list[tuple[Hunk, int]]]:
    """Group hunks from both sides into chains of mutually touching ranges."""
    tagged = [(h, 0) for h in ours.hunks] + [(h, 1) for h in theirs.hunks]
    tagged.sort(key=lambda item: (item[0].base_start, item[0].base_len, item[1]))
    clusters: list[list[tuple[Hunk, int]]] = []
    cluster_end = -1
    for hunk, side in tagged:
        reach = hunk.base_start + max(hunk.base_len, 1)
        if clusters and hunk.base_start <= cluster_end:
            clusters[-1].append((hunk, side))
            cluster_end = max(cluster_end, reach)
        else:
            clusters.append([(hunk, side)])
            cluster_end = reach
    return clusters


def _region_replacement(base: Document, hunks: list[Hunk], start: int, end: int) -> tuple[str, ...]:
    lines = list(base.lines[start:end])
    for hunk in sorted(hunks, key=lambda h: h.base_start, reverse=True):
        lines[hunk.base_start - start : hunk.base_end - start] = hunk.replacement
    return tuple(lines)


def _merged_flag(base: Document, ours: Changeset, theirs: Changeset) -> bool:
    if ours.final_newline != base.final_newline:
        return ours.final_newline
    return theirs.final_newline


def merge3(base: Document, ours: Changeset, theirs: Changeset) -> MergeOutcome:
    """Three-way merge of two changesets computed against the same base.

    Merges automatically when no hunk from one side overlaps a hunk from
    the other; the merged result is independent of argument order.
    Otherwise every colliding base region is reported with both sides'
    replacements and nothing is merged.
    """
    _check_bounds(ours, base)
    _check_bounds(theirs, base)

    regions: list[ConflictRegion] = []
    clean: list[Hunk] = []
    for cluster in _clusters(ours, theirs):
        sides = {side for _, side in cluster}
        if len(sides) == 2:
            start = min(h.base_start for h, _ in cluster)
            end = max(h.base_end for h, _ in cluster)
            regions.append(
                ConflictRegion(
                    base_start=start,
                    base_len=end - start,
                    ours=_region_replacement(base, [h for h, s in cluster if s == 0], start, end),
                    theirs=_region_replacement(base, [h for h, s in cluster if s == 1], start, end),
                )
            )
        else:
            clean.extend(h for h, _ in cluster)

    if regions:
        return MergeOutcome(conflicts=tuple(regions))

    combined = Changeset(tuple(sorted(clean, key=lambda h: h.base_start)),
                         _merged_flag(base, ours, theirs))
    return MergeOutcome(document=apply(base, combined))


def merge3_resolve(base: Document, ours: Changeset, theirs: Changeset,
                   strategy: str) -> Document:
    """Merge like :func:`merge3` but settle collisions by strategy.

    ``ours`` keeps the first side's replacement in each colliding region,
    ``theirs`` the second side's, and ``union`` stacks ours above theirs.
    """
    if strategy not in ("ours", "theirs", "union"):
        raise ValueError(f"unknown strategy {strategy!r}")
    _check_bounds(ours, base)
    _check_bounds(theirs, base)

    resolved: list[Hunk] = []
    for cluster in _clusters(ours, theirs):
        sides = {side for _, side in cluster}
        if len(sides) < 2:
            resolved.extend(h for h, _ in cluster)
            continue
        start = min(h.base_start for h, _ in cluster)
        end = max(h.base_end for h, _ in cluster)
        ours_rep = _region_replacement(base, [h for h, s in cluster if s == 0], start, end)
        theirs_rep = _region_replacement(base, [h for h, s in cluster if s == 1], start, end)
        if strategy == "ours":
            pick = ours_rep
        elif strategy == "theirs":
            pick = theirs_rep
        else:
            pick = ours_rep + theirs_rep
        if end - start == 0 and not pick:
            continue
        resolved.append(Hunk(start, end - start, pick))

    combined = Changeset(tuple(sorted(resolved, key=lambda h: h.base_start)),
                         _merged_flag(base, ours, theirs))
    return apply(base, combined)
