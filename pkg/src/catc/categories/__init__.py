from .base import CategoryEvaluator, MorphName

__all__ = ["CategoryEvaluator", "MorphName"]
