import os
from pathlib import Path
from typing import Union

from dotenv import load_dotenv

here = Path(__file__).parent


def unify_path(path: Union[Path, str]) -> Path:
    """
    Tries to bring some consistency to paths:
        - Resolve home directories (~ → /home/username).
        - Make paths absolute.

    :param path: The original path.
    :returns: The unified path.
    """
    if isinstance(path, str):
        path = Path(path)

    if str(path).startswith('~'):
        # resolve() function cannot handle paths starting with ~. This expands ~ to the home path in this case
        path = path.expanduser()

    # Normalize the path (this makes it also absolute)
    return path.resolve()


def worker_count() -> int:
    """
    Number of workers used for Monte-Carlo trials, capped by ``PEANOLAB_THREADS``.

    :returns: a positive worker count.
    """
    available = os.cpu_count() or 1
    cap = os.getenv('PEANOLAB_THREADS')
    if not cap:
        return available
    try:
        cap = int(cap)
    except ValueError:
        raise ValueError(f"PEANOLAB_THREADS must be a positive integer, got {cap!r}")
    if cap < 1:
        raise ValueError(f"PEANOLAB_THREADS must be a positive integer, got {cap}")
    return min(cap, available)


repo_dir = Path(__file__)
dotenv_path = repo_dir.parent.parent / '.env'
if dotenv_path.exists():
    load_dotenv(dotenv_path=dotenv_path)

# Set Path variables
results_dir = unify_path(os.getenv('PEANOLAB_RESULTS_PATH') or 'results')
configs_dir = here / 'configs'
report_schema_file = here / 'exponents' / 'report_schema.json'

# steps per independently keyed RNG stream; fixed so that paths do not depend on how chunks are distributed
rng_chunk_size = 2 ** 20
