"""Exception hierarchy.

Every error carries a machine-readable ``kind`` (the class name) and a
``category`` used by the CLI to pick an exit code:

* ``"math"``     -- the input is well formed but mathematically rejected (exit 2)
* ``"input"``    -- malformed or invalid input data (exit 3)
* ``"internal"`` -- an invariant the theory guarantees was violated (exit 4)
"""


class SeptowerError(Exception):
    category = "input"

    @property
    def kind(self) -> str:
        return type(self).__name__


class InputError(SeptowerError):
    pass


class DimensionMismatch(SeptowerError):
    pass


class FieldMismatch(SeptowerError):
    pass


class NotAField(SeptowerError):
    pass


class NotIdempotent(SeptowerError):
    pass


class NotAssociative(SeptowerError):
    pass


class NotUnital(SeptowerError):
    pass


class NotMultiplicative(SeptowerError):
    pass


class NotAModule(SeptowerError):
    pass


class BaseMismatch(SeptowerError):
    pass


class SubgroupNotContained(SeptowerError):
    pass


class EnumerationBudgetExceeded(SeptowerError):
    pass


class NotSeparable(SeptowerError):
    category = "math"


class NotCommutative(SeptowerError):
    category = "math"


class NoSection(SeptowerError):
    category = "math"


class ZeroBase(SeptowerError):
    category = "math"


class ZeroAlgebra(SeptowerError):
    category = "math"


class WitnessFailure(SeptowerError):
    category = "internal"


class LemmaViolation(SeptowerError):
    category = "internal"


class TowerGuardTripped(SeptowerError):
    category = "internal"


class InternalError(SeptowerError):
    category = "internal"
