import typing


class InputError(ValueError):
    """
    Reports a problem with the user input, such as a malformed data file
    or an invalid configuration value.
    """

    pass


class SolverException(Exception):
    """
    Reports a numerical failure that needs user's attention.

    To aid troubleshooting, the exception includes :attr:`~renewbound.SolverException.data` -
    a mapping with any data that has been computed prior encountering the issue,
    including the location of the failure (e.g. the capacity and price at which an ODE step failed).
    """

    def __init__(
        self,
        data: typing.Mapping[str, typing.Any],
        *args,
    ):
        super().__init__(*args)
        self._data = data

    @property
    def data(self) -> typing.Mapping[str, typing.Any]:
        """
        Get a mapping with (partial) data to aid troubleshooting.
        """
        return self._data

    def __repr__(self) -> str:
        return f"{type(self).__name__}(args={self.args}, data={self._data})"
