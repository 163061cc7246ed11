from ._laxlab import *  # noqa: F401,F403
from ._laxlab import __doc__  # noqa: F401
