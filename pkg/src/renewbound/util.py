import contextlib
import io
import os
import typing


PathOrHandle = typing.Union[str, os.PathLike, io.IOBase]


def open_text_io_handle_for_reading(
    file: PathOrHandle,
    encoding: str = "utf-8",
) -> io.TextIOBase:
    """
    Open a text handle for reading from `file`.

    :param file: a path to a local file or an :class:`io.IOBase`.
      An IO handle is wrapped to ensure we get a text wrapper with the given encoding.
    :param encoding: encoding used to decode the input (`utf-8` by default).
    """
    if isinstance(file, (str, os.PathLike)):
        return open(file, "r", encoding=encoding, newline="")
    return _wrap_handle(file, encoding)


def open_text_io_handle_for_writing(
    file: PathOrHandle,
    encoding: str = "utf-8",
) -> io.TextIOBase:
    """
    Open a text handle for writing into `file`.

    Line endings are always written as `\\n`, so that the outputs are byte-identical across platforms.
    """
    if isinstance(file, (str, os.PathLike)):
        return open(file, "w", encoding=encoding, newline="\n")
    return _wrap_handle(file, encoding)


def _wrap_handle(file: typing.Any, encoding: str) -> io.TextIOBase:
    if isinstance(file, io.IOBase):
        if isinstance(file, (io.TextIOWrapper, io.TextIOBase)):
            return file
        elif isinstance(file, (io.BytesIO, io.BufferedIOBase)):
            return io.TextIOWrapper(file, encoding=encoding, newline="")

    raise ValueError(f"Unsupported type {type(file)}")


def closing_if_path(file: PathOrHandle, handle: io.TextIOBase) -> typing.ContextManager:
    """
    Close the `handle` on exit only if we opened it from a path.
    """
    if isinstance(file, (str, os.PathLike)):
        return handle
    return contextlib.nullcontext(handle)
