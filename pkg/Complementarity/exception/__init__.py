import sys


class CCRException(Exception):

    def __init__(self, error_message, error_detail=sys):
        super().__init__(error_message)
        self.error_message = CCRException.get_detailed_error_message(error_message=error_message,
                                                                     error_detail=error_detail)

    @staticmethod
    def get_detailed_error_message(error_message, error_detail=sys) -> str:
        """
        error message :Exception object or text
        error_detail :object of sys module
        """
        _, _, exec_tb = error_detail.exc_info()
        if exec_tb is None:
            return str(error_message)
        while exec_tb.tb_next is not None:
            exec_tb = exec_tb.tb_next
        line_number = exec_tb.tb_lineno
        file_name = exec_tb.tb_frame.f_code.co_filename

        error_message = f"Error occured in [{file_name}] at line number [{line_number}] error message:[{error_message}] "
        return error_message

    def __str__(self) -> str:
        return self.error_message

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.error_message!r})"


class NotHermitian(CCRException):
    """Matrix differs from its conjugate transpose beyond tolerance."""


class TraceNotOne(CCRException):
    """Density-matrix trace differs from one beyond tolerance."""


class NotPSD(CCRException):
    """Matrix has an eigenvalue below the negativity tolerance."""


class DimensionMismatch(CCRException):
    """Shapes or subsystem dimensions do not agree."""


class InvalidParameter(CCRException):
    """A probability, weight or count lies outside its allowed range."""


class InvalidGate(CCRException):
    """Gate kind, arity, parameter count or wires are inconsistent."""


class IncompleteSettings(CCRException):
    """Tomography data does not cover every Pauli setting with equal shots."""


class SingularConfusionMatrix(CCRException):
    """A readout confusion matrix cannot be inverted."""


class ConfigError(CCRException):
    """Run configuration is malformed."""


class MalformedDataset(CCRException):
    """A dataset lacks the relation columns or holds non-numeric values."""


def find_cause(error: BaseException, error_type: type):
    """First error of ``error_type`` along the ``raise ... from`` chain, or None."""
    seen = set()
    while error is not None and id(error) not in seen:
        if isinstance(error, error_type):
            return error
        seen.add(id(error))
        error = error.__cause__
    return None
