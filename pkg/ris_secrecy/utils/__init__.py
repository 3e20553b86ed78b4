from ris_secrecy.utils.json_utils import json_dumps_compact, json_dumps_pretty, json_loads
from ris_secrecy.utils.misc import hash_sha256
from ris_secrecy.utils.parallel_executor import parallel_exec, serial_exec

__all__ = [
    'json_loads',
    'json_dumps_pretty',
    'json_dumps_compact',
    'hash_sha256',
    'parallel_exec',
    'serial_exec',
]
