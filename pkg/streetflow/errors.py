"""
Exception hierarchy for Streetflow.

Every error carries a machine-readable ``code`` and the process exit status
the CLI uses when the error escapes a command. Exit status 1 marks
validation problems, 2 non-genericity of the input data, 3 exhausted
resource bounds and 4 broken internal invariants.
"""

from typing import Any, Dict, Optional


class StreetflowError(Exception):
    """
    Base class for all Streetflow errors.
    """

    code = "error"
    exit_code = 1

    def __init__(self, message: str, code: Optional[str] = None, **details: Any):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """
        Render the error as the JSON object printed by the CLI.
        """
        data: Dict[str, Any] = {"error": self.code, "message": str(self)}
        for key, value in self.details.items():
            data[key] = value if isinstance(value, (int, float, bool, list, dict)) or value is None else str(value)
        return data


class ConfigValidationError(StreetflowError):
    """
    Raised when configuration validation fails.
    """

    code = "config"


class SpecValidationError(StreetflowError):
    """
    Raised when a foliation spec violates its invariants.

    The first violation name becomes the error code.
    """

    code = "spec"

    def __init__(self, violations):
        self.violations = list(violations)
        names = [v.name for v in self.violations]
        message = "; ".join(v.message for v in self.violations) or "invalid spec"
        super().__init__(message, code=names[0] if names else None, violations=names)


class FieldMismatchError(StreetflowError):
    """Scalars from two different quadratic fields were combined."""

    code = "field_mismatch"


class DomainError(StreetflowError):
    """An argument lies outside the domain of an operation."""

    code = "domain"


class CutPointError(StreetflowError):
    """The broken isometry is undefined at a cut point."""

    code = "cut_point"


class OrbitTruncationError(StreetflowError):
    """An orbit reached a cut point before the requested number of steps."""

    code = "orbit_truncated"

    def __init__(self, message: str, step: int):
        self.step = step
        super().__init__(message, step=step)


class ZeroMeasurePassError(StreetflowError):
    """The requested same-plane pass has zero measure."""

    code = "zero_measure_pass"


class InconsistencyError(StreetflowError):
    """A word uses a street pair with zero measure for the transition type."""

    code = "inconsistent_word"


class CommonPowerError(StreetflowError):
    """Both words of a basis pair are powers of one word."""

    code = "common_power"


class BuildingDataError(StreetflowError):
    """Building data failed validation and cannot be glued."""

    code = "building_data"

    def __init__(self, violations):
        self.violations = list(violations)
        message = "; ".join(v.message for v in self.violations) or "invalid building data"
        super().__init__(message, violations=[v.name for v in self.violations])


class ClassificationError(StreetflowError):
    """A glued surface claims a type that cannot exist."""

    code = "classification"


class InconsistentMeasuresError(StreetflowError):
    """Flux measures break one of the conservation identities."""

    code = "inconsistent_measures"

    def __init__(self, message: str, identity: str):
        self.identity = identity
        super().__init__(message, identity=identity)


class EndpointRootError(StreetflowError):
    """A root-counting interval has a root at one of its endpoints."""

    code = "endpoint_root"


class AssumptionError(StreetflowError):
    """A holomorphic form spec violates the standing assumptions."""

    code = "assumption"


class NonGenericityError(StreetflowError):
    """
    Raised when exact arithmetic finds a tie that generic data never has.
    """

    code = "non_generic"
    exit_code = 2


class ResourceLimitError(StreetflowError):
    """A depth or step bound was exceeded."""

    code = "resource_limit"
    exit_code = 3


class ModelViolationError(StreetflowError):
    """The geometric oracle produced a picture that contradicts the model."""

    code = "model_violation"
    exit_code = 4


class InternalConsistencyError(StreetflowError):
    """An internal bookkeeping identity failed."""

    code = "internal"
    exit_code = 4


class CommandUsageError(StreetflowError):
    """The command line itself was malformed: unknown option, bad value, missing argument."""

    code = "usage"
