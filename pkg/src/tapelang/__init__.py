from .exceptions import *
from .helpers import ALPHABET, LanguageConfig
from .interpreter import *
from .program import *
from .prune import prune
