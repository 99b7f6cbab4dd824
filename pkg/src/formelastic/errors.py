"""Exception hierarchy shared by all modules."""


class FormElasticError(Exception):
    """Base class for every error raised by this package."""


class SingularJet(FormElasticError, ArithmeticError):
    """A reciprocal or square root was requested too close to zero."""


class SingularPoint(FormElasticError, ValueError):
    """The evaluation point lies on (or too near) a chart singularity."""


class OutOfDomain(FormElasticError, ValueError):
    """A point lies outside the domain of a coordinate map."""


class DerivativeBudgetExceeded(FormElasticError):
    """An operation needed a derivative order that is no longer carried."""


class TagMismatch(FormElasticError, ValueError):
    """Operands live on different charts or at different points."""


class DegreeOverflow(FormElasticError, ValueError):
    """The degree of a wedge product would exceed 3."""


class InconsistentPair(FormElasticError, ValueError):
    """A displacement one-form and vector field are not related by index lowering."""


class NotNormalized(FormElasticError, ValueError):
    """A boundary normal does not have unit length."""


class ChartNotAdapted(FormElasticError, ValueError):
    """The chart has no unit radial coordinate at the requested index."""


class InvalidModuli(FormElasticError, ValueError):
    """Lamé parameters violate mu > 0 or a positive bulk modulus."""


class InvalidSpec(FormElasticError, ValueError):
    """A field specification cannot be turned into a displacement field."""


class UnknownSuite(FormElasticError, KeyError):
    pass


class UnknownOp(FormElasticError, KeyError):
    pass


class ConfigError(FormElasticError, ValueError):
    pass
