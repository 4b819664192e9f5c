from .field import FieldContext, embedding, get_field
from .laurent import LaurentPoly, frobenius_twist, laurent_mul


def pth_root(ctx, a):
    """The unique b in the field with b^p = a."""
    return ctx.pth_root(a)


__all__ = ["FieldContext", "LaurentPoly", "embedding", "frobenius_twist",
           "get_field", "laurent_mul", "pth_root"]
