"""LZ77 data model with an alphabet prefix in the negative positions.

Conventions used throughout the package: symbols are integer codes in
[1..sigma].  The (virtual) string extends to the left of the text with
S[-c] = c for every code c and S[0] = 0 (the '$' sentinel, code 0).  A parse
member (s, l) produces l characters copied from positions s..s+l-1, which
must lie strictly before the phrase it produces (no overlap), so negative
sources read the alphabet prefix.  Source 0 is allowed only for the
single-character sentinel phrase (0, 1) used by the pattern matcher.
"""

from bisect import bisect_right

from .errors import InputError, ParseFormatError


class Lz77Parse:
    """An LZ77 representation: alphabet size, text length, (source, length) members."""

    __slots__ = ("sigma", "n", "members")

    def __init__(self, sigma, n, members):
        self.sigma = sigma
        self.n = n
        self.members = tuple((int(s), int(l)) for s, l in members)

    @property
    def z(self):
        return len(self.members)

    def starts(self):
        """Phrase start positions u_1..u_z (1-based)."""
        u = []
        acc = 1
        for _, l in self.members:
            u.append(acc)
            acc += l
        return u

    def __eq__(self, other):
        return (isinstance(other, Lz77Parse) and self.sigma == other.sigma
                and self.n == other.n and self.members == other.members)

    def __hash__(self):
        return hash((self.sigma, self.n, self.members))

    def __repr__(self):
        return f"Lz77Parse(sigma={self.sigma}, n={self.n}, z={self.z})"


class PhraseTable:
    """Phrase starts plus, for a fixed tau, the per-phrase out-of-context gap.

    gap_k counts the positions of phrase k that are farther than tau-1 from
    the phrase's own start and farther than tau-1 from the next phrase start
    (the end of the text counts as a phrase start), i.e.
    gap_k = max(0, l_k - 2*tau + 1).
    """

    __slots__ = ("u", "lengths", "gap", "tau", "n")

    def __init__(self, parse, tau):
        if tau < 1:
            raise InputError(f"tau must be >= 1, got {tau}")
        self.tau = tau
        self.n = parse.n
        self.u = parse.starts()
        self.lengths = [l for _, l in parse.members]
        t2 = 2 * tau - 1
        self.gap = [l - t2 if l > t2 else 0 for l in self.lengths]

    def locate(self, p):
        """Index k (0-based) of the phrase covering position p."""
        if not 1 <= p <= self.n:
            raise InputError(f"position {p} outside [1..{self.n}]")
        return bisect_right(self.u, p) - 1


def phrase_table(parse, tau):
    return PhraseTable(parse, tau)


def locate_phrase(table, p):
    return table.locate(p)


def validate(parse):
    """Check all structural invariants; returns a list of violation messages."""
    report = []
    if parse.sigma < 1:
        report.append(f"sigma={parse.sigma} must be >= 1")
    total = sum(l for _, l in parse.members)
    if total != parse.n:
        report.append(f"member lengths sum to {total}, expected n={parse.n}")
    u = 1
    for i, (s, l) in enumerate(parse.members, start=1):
        if l < 1:
            report.append(f"member {i}: length {l} < 1")
        if s < -parse.sigma:
            report.append(f"member {i}: source {s} below -sigma={-parse.sigma}")
        if s == 0 and l != 1:
            report.append(f"member {i}: source 0 requires length 1, got {l}")
        if s + l > u:
            report.append(f"member {i}: source overlaps phrase "
                          f"(s+l={s + l} > u={u})")
        u += l
    return report


def decompress_naive(parse):
    """Expand the parse left to right into a full buffer of symbol codes.

    The baseline decompressor: needs n words but copies at slice speed.
    Sentinel characters copied from position 0 come out as code 0.
    """
    bad = validate(parse)
    if bad:
        raise InputError("invalid parse: " + "; ".join(bad))
    out = []
    for s, l in parse.members:
        if s > 0:
            out.extend(out[s - 1:s - 1 + l])
        else:
            # Alphabet-prefix / sentinel region: S[j] = -j for j < 0, S[0] = 0.
            end = s + l
            if end <= 0:
                out.extend(range(-s, -end, -1))
            else:
                out.extend(range(-s, 0, -1))
                out.append(0)
                out.extend(out[0:end - 1])
    return out


def validate_text(text, sigma):
    for i, c in enumerate(text):
        if not 1 <= c <= sigma:
            raise InputError(f"symbol code {c} at position {i + 1} "
                             f"outside [1..{sigma}]")


def render_symbols(codes):
    """Debug rendering: '$' for the sentinel, letters for codes up to 26."""
    return "".join("$" if c == 0 else (chr(96 + c) if c <= 26 else f"<{c}>")
                   for c in codes)


def serialize(parse):
    """Bit-exact text format; see `deserialize` for the grammar."""
    lines = ["LZ77 v1", f"sigma={parse.sigma} n={parse.n} z={parse.z}"]
    lines.extend(f"{s} {l}" for s, l in parse.members)
    return ("\n".join(lines) + "\n").encode("ascii")


def deserialize(data):
    """Parse the serialized form back into an Lz77Parse.

    Format (LF-terminated text):
        LZ77 v1
        sigma=<sigma> n=<n> z=<z>
        <s_1> <l_1>
        ...
        <s_z> <l_z>
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError as e:
            raise ParseFormatError(1, f"not ascii text: {e}") from None
    else:
        text = data
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != "LZ77 v1":
        raise ParseFormatError(1, "expected header 'LZ77 v1'")
    if len(lines) < 2:
        raise ParseFormatError(2, "missing 'sigma= n= z=' line")
    fields = lines[1].split()
    keys = ("sigma", "n", "z")
    if len(fields) != 3 or any(not f.startswith(k + "=") for f, k in zip(fields, keys)):
        raise ParseFormatError(2, f"expected 'sigma=S n=N z=Z', got {lines[1]!r}")
    try:
        sigma, n, z = (int(f.split("=", 1)[1]) for f in fields)
    except ValueError:
        raise ParseFormatError(2, f"non-integer field in {lines[1]!r}") from None
    members = []
    for idx in range(z):
        lineno = 3 + idx
        if lineno - 1 >= len(lines):
            raise ParseFormatError(lineno, f"expected {z} members, found {idx}")
        parts = lines[lineno - 1].split()
        if len(parts) != 2:
            raise ParseFormatError(lineno, f"expected '<s> <l>', got {lines[lineno - 1]!r}")
        try:
            members.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseFormatError(lineno, f"non-integer member {lines[lineno - 1]!r}") from None
    if len(lines) > 2 + z:
        raise ParseFormatError(3 + z, f"trailing data after {z} members")
    return Lz77Parse(sigma, n, members)
