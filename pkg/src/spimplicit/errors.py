"""Exception hierarchy. Every class carries the CLI exit code it maps to."""


class ImplicitError(Exception):
    exit_code = 1
    code = "error"


class InputIOError(ImplicitError):
    exit_code = 3
    code = "io_error"


class ParseError(ImplicitError):
    exit_code = 4
    code = "parse_error"

    def __init__(self, message, position=None, text=None):
        self.position = position
        if position is not None and text is not None:
            line = text.count("\n", 0, position) + 1
            col = position - (text.rfind("\n", 0, position) + 1) + 1
            message = f"{message} (line {line}, column {col})"
        elif position is not None:
            message = f"{message} (offset {position})"
        super().__init__(message)


class UnsupportedInput(ImplicitError):
    exit_code = 5
    code = "unsupported_input"


class CapExceeded(ImplicitError):
    exit_code = 6
    code = "cap_exceeded"


class EmptyKernel(ImplicitError):
    exit_code = 7
    code = "empty_kernel"


class NonGenericSampling(ImplicitError):
    exit_code = 8
    code = "non_generic_sampling"


class ZeroCoordinate(ImplicitError):
    exit_code = 9
    code = "zero_coordinate"


class OnSurface(ImplicitError):
    exit_code = 10
    code = "on_surface"


class DenominatorZero(ImplicitError):
    exit_code = 11
    code = "denominator_zero"

    def __init__(self, index):
        self.index = index
        super().__init__(f"denominator of coordinate {index} vanishes")


class DegenerateRay(ImplicitError):
    exit_code = 12
    code = "degenerate_ray"


class NotCorank1(ImplicitError):
    exit_code = 13
    code = "not_corank1"


class CoincidesWithSampleRow(ImplicitError):
    exit_code = 14
    code = "coincides_with_sample_row"

    def __init__(self, index):
        self.index = index
        super().__init__(f"query point equals the image of sample point {index}")


class SamplingExhausted(ImplicitError):
    exit_code = 15
    code = "sampling_exhausted"


class DimensionMismatch(ImplicitError):
    exit_code = 16
    code = "dimension_mismatch"
