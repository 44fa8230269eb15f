class PlotsError(Exception):
    """Base class for rendering failures."""


class RecipeError(PlotsError):
    """The recipe itself is malformed (id, mode, output suffix)."""


class SchemaError(PlotsError):
    """A CSV does not carry the columns the recipe needs."""
