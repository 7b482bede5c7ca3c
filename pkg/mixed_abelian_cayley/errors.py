class CayleyGraphException(Exception):
    """Base exception for the mixed Abelian Cayley graph package"""

    pass


class DegreeSpecException(CayleyGraphException):
    """Exception triggered when a degree profile or search profile is invalid"""

    pass


class GeneratingSetException(CayleyGraphException):
    """Exception triggered when a generating set breaks its invariants or does not generate the group"""

    pass


class SingularMatrixException(CayleyGraphException):
    """Exception triggered when a group is requested from a singular integer matrix"""

    pass


class OracleCapException(CayleyGraphException):
    """Exception triggered when the counting oracle would enumerate too many states"""

    pass


class SearchCapException(CayleyGraphException):
    """Exception triggered when a search range is empty or above the desk-scale cap"""

    pass


class FamilyException(CayleyGraphException):
    """Exception triggered when a family is asked for a diameter it does not cover"""

    pass


class CertificationException(CayleyGraphException):
    """Exception triggered when a computed object fails its own certificate"""

    pass
