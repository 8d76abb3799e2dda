"""Reusable validators for Quipu value types"""
# Quipu
from quipu.exceptions import ValidationError


class MinValueValidator:
    """ Validate the minimum value"""

    def __init__(self, min_value, label="value"):
        self.min_value = min_value
        self.message = f"{label} is lesser than {self.min_value}"

    def __call__(self, value):
        if value < self.min_value:
            raise ValidationError(self.message)


class MaxValueValidator:
    """ Validate the maximum value"""

    def __init__(self, max_value, label="value"):
        self.max_value = max_value
        self.message = f"{label} is greater than {self.max_value}"

    def __call__(self, value):
        if value > self.max_value:
            raise ValidationError(self.message)


class ChoiceValidator:
    """Validate that the value is one of a fixed set"""

    def __init__(self, choices, label="value"):
        self.choices = tuple(choices)
        self.message = f"{label} must be one of {', '.join(map(str, self.choices))}"

    def __call__(self, value):
        if value not in self.choices:
            raise ValidationError(self.message)


class LengthValidator:
    """Validate that a sequence has exactly ``length`` items"""

    def __init__(self, length, label="value"):
        self.length = length
        self.label = label

    def __call__(self, value):
        if len(value) != self.length:
            raise ValidationError(
                f"{self.label} has {len(value)} items, expected {self.length}"
            )


class StrictlyIncreasingValidator:
    """Validate that a sequence is strictly increasing"""

    def __init__(self, label="value"):
        self.message = f"{label} is not strictly increasing"

    def __call__(self, value):
        values = list(value)
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValidationError(self.message)
