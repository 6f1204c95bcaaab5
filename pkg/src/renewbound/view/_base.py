import abc
import io
import math
import typing

from jinja2 import Environment, PackageLoader

from renewbound.estimate import star_code
from renewbound.util import closing_if_path, open_text_io_handle_for_writing


def number(
    value: typing.Optional[float],
    digits: int = 4,
) -> str:
    """
    Format a number with a fixed count of decimals.

    >>> number(29.32051234)
    '29.3205'
    >>> number(None)
    'n/a'
    """
    if value is None:
        return "n/a"
    if not math.isfinite(value):
        return str(value)
    return f"{value:.{digits}f}"


def pct_deviation(
    computed: typing.Optional[float],
    reported: typing.Optional[float],
) -> str:
    """
    Format the deviation of the `computed` value from the `reported` one in percent.

    >>> pct_deviation(30.0, 25.0)
    '+20.00%'
    >>> pct_deviation(1.0, None)
    'n/a'
    """
    if computed is None or reported is None or reported == 0:
        return "n/a"
    return f"{100.0 * (computed - reported) / abs(reported):+.2f}%"


class BaseViewer(metaclass=abc.ABCMeta):
    def __init__(self):
        self._environment = Environment(
            loader=PackageLoader("renewbound.view", "templates"),
            keep_trailing_newline=True,
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self._environment.filters["number"] = number
        self._environment.filters["pct_deviation"] = pct_deviation
        self._environment.filters["stars"] = star_code


class RenewboundReport(metaclass=abc.ABCMeta):
    """
    `RenewboundReport` summarizes the results of a run for the user.
    """

    @abc.abstractmethod
    def write(self, fh: typing.Union[io.IOBase, str]):
        """
        Write the report into the provided path or file handle.

        :param fh: a `str` with path
          or :class:`io.IOBase` with the file-like object for writing the report into.
        """
        pass


class MarkdownReport(RenewboundReport):
    """
    A report where the content is formatted as a Markdown `str`.
    """

    def __init__(
        self,
        text: str,
    ):
        assert isinstance(text, str)
        self._text = text

    @property
    def text(self) -> str:
        return self._text

    def write(self, fh: typing.Union[io.IOBase, str]):
        fout = open_text_io_handle_for_writing(fh)
        with closing_if_path(fh, fout):
            fout.write(self._text)

    def __str__(self) -> str:
        return self._text
