"""
Exceptions raised by the semantic space.

Every class carries the wire ``code`` (and HTTP ``status``) it maps to, so the
HTTP service can render any of them without a lookup table.
"""


class SemspaceError(Exception):
    code = "INTERNAL"
    status = 500

    @property
    def message(self):
        return str(self)


class OntologyError(SemspaceError):
    """Raised while parsing an ontology or building its index."""

    code = "MALFORMED_REQUEST"
    status = 400


class MalformedLine(OntologyError):
    def __init__(self, line, reason="malformed line"):
        super().__init__("line {0}: {1}".format(line, reason))
        self.line = line
        self.reason = reason


class CycleDetected(OntologyError):
    def __init__(self, witness):
        super().__init__("cycle detected at concept {0!r}".format(witness))
        self.witness = witness


class HashCollision(OntologyError):
    def __init__(self, first, second, code):
        super().__init__(
            "hash collision: {0!r} and {1!r} both hash to {2}".format(first, second, code))
        self.first = first
        self.second = second
        self.hash_code = code


class UnknownConcept(SemspaceError, KeyError):
    code = "UNKNOWN_CONCEPT"
    status = 404

    def __init__(self, concept):
        super().__init__(concept)
        self.concept = concept

    def __str__(self):
        # KeyError would repr() the single argument
        return "unknown concept {0!r}".format(self.concept)


class ModelNotLoaded(SemspaceError):
    code = "MODEL_NOT_LOADED"
    status = 409

    def __init__(self, model):
        super().__init__("model {0} is not loaded".format(getattr(model, "value", model)))
        self.model = model


class FloorOutOfRange(SemspaceError, ValueError):
    code = "FLOOR_OUT_OF_RANGE"
    status = 400

    def __init__(self, floor):
        super().__init__("semantic match degree floor {0!r} is outside [0, 1]".format(floor))
        self.floor = floor


class InvalidLease(SemspaceError, ValueError):
    code = "INVALID_LEASE"
    status = 400

    def __init__(self, lease):
        super().__init__("lease must be a positive number of milliseconds, got {0!r}".format(lease))
        self.lease = lease


class PayloadTooLarge(SemspaceError):
    code = "PAYLOAD_TOO_LARGE"
    status = 413

    def __init__(self, size, limit):
        super().__init__("payload of {0} bytes exceeds the limit of {1} bytes".format(size, limit))
        self.size = size
        self.limit = limit


class MalformedRequest(SemspaceError):
    code = "MALFORMED_REQUEST"
    status = 400


class BindFailure(SemspaceError):
    def __init__(self, address, cause):
        super().__init__("cannot listen on {0}: {1}".format(address, cause))
        self.address = address
        self.cause = cause
