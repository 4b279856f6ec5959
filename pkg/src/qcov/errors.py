"""Shared exception types."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain.

    Examples: mixing scalars of different cyclotomic orders, decomposing an
    element that is not in the free module, or asking for ``gt`` in the base
    algebra.  The command line maps this to exit code 2.
    """
