class TwoCompError(Exception):
    pass


class ConfigurationError(TwoCompError, ValueError):
    pass


class DegenerateMetricError(TwoCompError):
    pass


class EvaluationError(TwoCompError, ArithmeticError):
    pass


class NonFiniteStateError(EvaluationError):
    pass


class FlowDegeneracyError(TwoCompError):
    pass
