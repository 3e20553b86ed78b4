from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional

from tqdm import tqdm

PROGRESS_THRESHOLD = 100


def parallel_exec(
    fn: Callable,
    list_of_kwargs: List[dict],
    max_workers: Optional[int] = None,
    desc: Optional[str] = None,
) -> list:
    """
    Executes `fn` on a thread pool, once per kwargs dict.

    Args:
    - fn (Callable): The function to execute in parallel.
    - list_of_kwargs (list): A list of dicts, each holding the arguments for one call to `fn`.
    - max_workers (int, optional): Upper bound on concurrent calls. `1` runs serially in the caller's thread.
    - desc (str, optional): Label of the progress bar shown for batches larger than 100 tasks.

    Returns:
    - A list of results in the order of `list_of_kwargs`, whatever order the tasks complete in.

    Numpy and scipy release the GIL in their kernels, so threads give real speed-ups on the
    vectorised workloads submitted here.
    """
    show_progress = len(list_of_kwargs) > PROGRESS_THRESHOLD
    if max_workers == 1:
        return serial_exec(fn, list_of_kwargs, desc=desc if show_progress else None)

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = [executor.submit(fn, **kwargs) for kwargs in list_of_kwargs]
        iterator = tqdm(futures, desc=desc, disable=not show_progress, leave=False)
        return [future.result() for future in iterator]


# for debug
def serial_exec(fn: Callable, list_of_kwargs: List[dict], desc: Optional[str] = None) -> List[Any]:
    results = []
    for kwargs in tqdm(list_of_kwargs, desc=desc, disable=desc is None, leave=False):
        results.append(fn(**kwargs))
    return results
