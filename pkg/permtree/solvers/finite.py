from ..gentree import TransitionMatrix
from ..symbolic.linear import LinearForm, solve_linear_system
from ..symbolic.ratfunc import RationalFunction, x
from .equations import Solution


def solve_finite_system(matrix: TransitionMatrix) -> Solution:
    """Solve (I - xM) y = 1; the root is the first class of the matrix."""
    classes = matrix.class_order
    equations = [
        LinearForm.unknown(cls)
        - sum(
            (
                LinearForm.unknown(child, x * entry)
                for child, entry in zip(classes, row)
                if entry
            ),
            LinearForm(),
        )
        - 1
        for cls, row in zip(classes, matrix.entries)
    ]
    solution = solve_linear_system(equations, classes)
    components = {
        str(cls): x**cls.rep_length * solution[cls] for cls in classes
    }
    return Solution(x * solution[classes[0]], components, solution.determinant)


def solve_finite(matrix: TransitionMatrix) -> RationalFunction:
    return solve_finite_system(matrix).gf
