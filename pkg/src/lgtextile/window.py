from dataclasses import dataclass


@dataclass(frozen=True)
class Window:
    """A finite piece of a bi-infinite sequence: word[0] sits at coordinate `start`.

    Sliding-block codes and decoders shrink windows; keeping absolute
    coordinates makes margin bookkeeping exact.
    """

    start: int
    word: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))

    @classmethod
    def of(cls, word, start=0):
        if isinstance(word, Window):
            return word
        return cls(start, tuple(word))

    @property
    def end(self):
        return self.start + len(self.word)

    def __len__(self):
        return len(self.word)

    def at(self, i):
        return self.word[i - self.start]

    def crop(self, lo=None, hi=None):
        lo = self.start if lo is None else max(lo, self.start)
        hi = self.end if hi is None else min(hi, self.end)
        if hi <= lo:
            return Window(lo, ())
        return Window(lo, self.word[lo - self.start:hi - self.start])

    def shifted(self, d):
        return Window(self.start + d, self.word)

    def nonnegative(self):
        """The part at coordinates >= 0, as a plain word."""
        return self.crop(0).word
