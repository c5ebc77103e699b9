from ._pulsetrain import *  # noqa: F401,F403
from ._pulsetrain import __doc__  # noqa: F401
