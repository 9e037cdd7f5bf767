"""Adapted from https://github.com/huggingface/transformers/blob/main/src/transformers/hf_argparser.py"""

import argparse
import dataclasses
import os
import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentTypeError
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Type, Union
from typing import get_type_hints, no_type_check

from layersim.utils.exceptions import ParseError, UsageError

CONFIG_FLAG = "--config"
TRUE_STRINGS = ("yes", "true", "t", "y", "1")
FALSE_STRINGS = ("no", "false", "f", "n", "0")


def string_to_bool(v: Union[str, bool]) -> bool:
    if isinstance(v, bool):
        return v
    if v.lower() in TRUE_STRINGS:
        return True
    if v.lower() in FALSE_STRINGS:
        return False
    expected = "/".join(TRUE_STRINGS + FALSE_STRINGS)
    raise ArgumentTypeError(f"Truthy value expected: got {v} but expected one of {expected} (case insensitive)")


@no_type_check
def Arg(*, help: Optional[str] = None, default: Any = dataclasses.MISSING, **kwargs) -> dataclasses.Field:
    """Dataclass field parsed by `DataclassArgumentParser` as `--<name>`, with `help` shown by `--help`.

    Example:
    ```
    @dataclass
    class Args:
        omega: float = Arg(default=0.5, help="weight of the PED loss")
    ```
    """
    metadata = dict(kwargs.pop("metadata", None) or {})
    if help is not None:
        metadata["help"] = help
    return dataclasses.field(default=default, metadata=metadata, **kwargs)


def read_config_file(path: str) -> List[str]:
    """Turn a key=value config file into command-line tokens.

    Blank lines and `#` comments are skipped; `key=a b c` becomes `--key a b c`, so list-valued
    arguments can be set from the file too.
    """
    if not os.path.isfile(path):
        raise UsageError(f"Config file not found: {path}")
    tokens: List[str] = []
    with open(path, "r", encoding="utf-8") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().lstrip("-")
            if not sep or not key:
                raise ParseError(f"expected `key=value`, got `{line}`", line_number, path)
            tokens.append(f"--{key}")
            tokens.extend(value.split())
    return tokens


def expand_config_files(args: Sequence[str]) -> List[str]:
    """Replace every `--config path` with the file's arguments placed before the command-line ones,
    so that command-line flags win over config files, and later files win over earlier ones."""
    file_args: List[str] = []
    cli_args: List[str] = []
    iterator = iter(args)
    for token in iterator:
        if token == CONFIG_FLAG:
            path = next(iterator, None)
            if path is None:
                raise UsageError(f"{CONFIG_FLAG} expects a file path")
            file_args.extend(read_config_file(path))
        elif token.startswith(CONFIG_FLAG + "="):
            file_args.extend(read_config_file(token.split("=", 1)[1]))
        else:
            cli_args.append(token)
    return file_args + cli_args


def _unwrap_optional(hint: Any) -> Tuple[Any, bool]:
    if getattr(hint, "__origin__", None) is not Union:
        return hint, False
    members = [arg for arg in hint.__args__ if arg is not type(None)]
    if len(members) != 1 or len(hint.__args__) != 2:
        raise ValueError(f"Only `Optional[X]` unions can be parsed, got: {hint}")
    return members[0], True


def _field_default(field: dataclasses.Field) -> Any:
    if field.default is not dataclasses.MISSING:
        return field.default
    if field.default_factory is not dataclasses.MISSING:
        return field.default_factory()
    return dataclasses.MISSING


def _argument_kwargs(field: dataclasses.Field, hint: Any) -> Dict[str, Any]:
    """The `add_argument` keywords of one field: `Literal` choices, truthy strings for `bool` (given
    bare, the flag means `True`), `nargs="+"` for lists and tuples, `type=hint` otherwise."""
    hint, _ = _unwrap_optional(hint)
    origin = getattr(hint, "__origin__", hint)
    kwargs: Dict[str, Any] = {k: v for k, v in field.metadata.items() if k == "help"}
    if origin is Literal:
        choices = hint.__args__
        by_name = {str(choice): choice for choice in choices}
        kwargs.update(choices=choices, type=lambda value: by_name.get(value, value))
    elif hint is bool:
        kwargs.update(type=string_to_bool, nargs="?", const=True)
    elif origin in (list, tuple, List, Tuple):
        kwargs.update(type=hint.__args__[0], nargs="+")
    else:
        kwargs.update(type=hint)
    default = _field_default(field)
    if default is dataclasses.MISSING:
        kwargs["required"] = True
    else:
        kwargs["default"] = default
    return kwargs


class DataclassArgumentParser(argparse.ArgumentParser):
    """`argparse.ArgumentParser` with one `--<name>` flag per field of the dataclasses it is given.

    `True`-defaulted booleans also get a `--no_<name>` flag. Parsing failures raise `UsageError`
    instead of exiting, so that the command line can report them with its own exit status.
    """

    def __init__(self, dataclass_types: Union[Type[Any], Sequence[Type[Any]]], **kwargs):
        kwargs.setdefault("formatter_class", ArgumentDefaultsHelpFormatter)
        super().__init__(**kwargs)
        self.dataclass_types: List[Type[Any]] = (
            [dataclass_types] if dataclasses.is_dataclass(dataclass_types) else list(dataclass_types)
        )
        for dtype in self.dataclass_types:
            self._add_dataclass_arguments(dtype)

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")

    def _add_dataclass_arguments(self, dtype: Type[Any]) -> None:
        try:
            hints = get_type_hints(dtype)
        except NameError as e:
            raise RuntimeError(f"Type resolution failed for {dtype}, declare it in global scope") from e
        for field in dataclasses.fields(dtype):
            if not field.init:
                continue
            self.add_argument(f"--{field.name}", **_argument_kwargs(field, hints[field.name]))
            if field.default is True and _unwrap_optional(hints[field.name])[0] is bool:
                self.add_argument(
                    f"--no_{field.name}", action="store_false", dest=field.name, help=f"sets `{field.name}` to False"
                )

    def parse_args_into_dataclasses(self, args: Optional[Sequence[str]] = None) -> Tuple[Any, ...]:
        """Parse command-line args, expanded with any `--config` files, into one instance per dataclass
        type given to the initializer.

        Raises:
            UsageError: on unknown or malformed arguments.
        """
        args = expand_config_files(sys.argv[1:] if args is None else list(args))
        namespace, remaining_args = self.parse_known_args(args=args)
        if remaining_args:
            raise UsageError(f"{self.prog}: unrecognized arguments: {' '.join(remaining_args)}")
        values = vars(namespace)
        outputs = []
        for dtype in self.dataclass_types:
            names = {f.name for f in dataclasses.fields(dtype) if f.init}
            outputs.append(dtype(**{k: v for k, v in values.items() if k in names}))
        return tuple(outputs)
