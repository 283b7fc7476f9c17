from ._qho import *  # noqa: F401,F403
from ._qho import BudgetExceeded, DegenerateField  # noqa: F401
