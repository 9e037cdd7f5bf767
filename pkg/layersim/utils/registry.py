import sys
from typing import Any, Callable, Dict, List

# Mapping of packages with their registered commands.
# A new command can be added as: tasks[module] = [..., command]
# where `module` and `command` are respectively taken from layersim/algos/{module}/{command}.py
tasks: Dict[str, List[str]] = {}


def _register(fn: Callable[..., Any]) -> Callable[..., Any]:
    # lookup containing module
    if fn.__module__ == "__main__":
        return fn
    module_split = fn.__module__.split(".")
    command = module_split[-1]
    module = ".".join(module_split[:-1])
    commands = tasks.get(module, None)
    if commands is None:
        tasks[module] = [command]
    else:
        if command in commands:
            raise ValueError(f"The command `{command}` has already been registered!")
        tasks[module].append(command)

    # add the decorated function to __all__ in the command module
    entrypoint = fn.__name__
    mod = sys.modules[fn.__module__]
    if hasattr(mod, "__all__"):
        mod.__all__.append(entrypoint)
    else:
        mod.__all__ = [entrypoint]
    return fn


def register_task():
    def inner_decorator(fn):
        return _register(fn)

    return inner_decorator
