"""Hierarchia wyjątków projektu.

Wyjątki walidacji (złe wymiary, niehermitowskie wejście, przekroczone
limity) są rozróżnione od błędów numerycznych (osobliwa macierz, zależna
baza), bo front-end CLI mapuje je na różne kody wyjścia.
"""

import numpy as np


class GroupSelectionError(Exception):
    """Bazowy wyjątek wszystkich błędów biblioteki."""


class ValidationError(GroupSelectionError, ValueError):
    """Niepoprawne dane wejściowe. Kod wyjścia CLI: 1."""


class DegreeCapError(ValidationError):
    """Stopień grupy przekracza limit obliczeń wyczerpujących."""


class GroupTooLargeError(ValidationError):
    """Domknięcie generatorów przekroczyło limit liczby elementów."""


class NumericalError(GroupSelectionError, ArithmeticError):
    """Porażka numeryczna. Kod wyjścia CLI: 2."""


class DependentBasisError(NumericalError):
    """Macierz Grama nie jest dodatnio określona.

    Attributes:
        null_vector (np.ndarray | None): Wektor współczynników c, dla
            którego c*Gc jest bliskie zeru (kombinacja prawie zerowa).
    """

    def __init__(self, message, null_vector=None):
        super().__init__(message)
        self.null_vector = None if null_vector is None else np.asarray(null_vector)


class BasisExhaustedError(GroupSelectionError):
    """Deflacja usunęła wszystkie elementy bazy."""


def exit_code_for(err):
    """Zwraca kod wyjścia CLI odpowiadający wyjątkowi.

    Args:
        err (BaseException): Przechwycony wyjątek.

    Returns:
        int: 1 dla błędów walidacji, 2 dla błędów numerycznych i pozostałych.
    """
    if isinstance(err, ValidationError):
        return 1
    return 2
