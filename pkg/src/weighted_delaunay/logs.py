'''
Weighted Delaunay

Log support. By default no logger is configured, and everything logged is dropped. But you can hook
one here with:

import weighted_delaunay.logs
weighted_delaunay.logs.hook(yourlogger)

Any object with debug/info/warning/error/critical methods will do. Modules take the module level
logger at import time, and it forwards to whatever is hooked when a message is logged, so hooking
late still works.
'''
# Python imports
import logging


class null_logger:

    def debug(self, msg, *args):
        pass

    def info(self, msg, *args):
        pass

    def warning(self, msg, *args):
        pass

    def error(self, msg, *args):
        pass

    def critical(self, msg, *args):
        pass


class hooked_logger:
    '''
    Forwards every message to a target logger that can be swapped at runtime.
    '''

    def __init__(self, target=None):
        self.target = target if target is not None else null_logger()

    def debug(self, msg, *args):
        self.target.debug(msg, *args)

    def info(self, msg, *args):
        self.target.info(msg, *args)

    def warning(self, msg, *args):
        self.target.warning(msg, *args)

    def error(self, msg, *args):
        self.target.error(msg, *args)

    def critical(self, msg, *args):
        self.target.critical(msg, *args)


logger = hooked_logger()


def hook(target):
    '''
    Routes package logging to target. None restores the null logger.
    '''
    logger.target = target if target is not None else null_logger()


def use_logging(level=logging.INFO):
    '''
    Hooks the standard library logger named "weighted_delaunay", giving it a stderr handler
    if it has none yet.

    :param level: the logging level to set on it.
    '''
    std = logging.getLogger("weighted_delaunay")
    if not std.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        std.addHandler(handler)
    std.setLevel(level)
    hook(std)
    return std
