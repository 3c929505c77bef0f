"""
重复实验的分片与并行执行

分片只按重复编号切分，与线程数无关；每个重复的结果只取决于
(seed, 重复编号)，按编号顺序拼接后再汇总，因此结果与线程数无关。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from config import Config

logger = logging.getLogger(__name__)

ChunkKernel = Callable[[int, int], Tuple[np.ndarray, ...]]


class ReplicatePool:
    """线程池：numba内核释放GIL，线程即可真正并行"""

    def __init__(self, workers: Optional[int] = None, chunk_size: Optional[int] = None,
                 progress: Optional[bool] = None):
        self.workers = max(1, int(workers if workers is not None else Config.WORKERS))
        self.chunk_size = max(1, int(chunk_size if chunk_size is not None else Config.CHUNK_SIZE))
        self.progress = Config.PROGRESS if progress is None else progress

    def chunks(self, n_samples: int) -> List[Tuple[int, int]]:
        return [(start, min(start + self.chunk_size, n_samples))
                for start in range(0, n_samples, self.chunk_size)]

    def run(self, kernel: ChunkKernel, n_samples: int, desc: str = "replicates") -> Tuple[np.ndarray, ...]:
        """对 [0, n_samples) 逐片调用 kernel(start, stop)，按编号顺序拼接各输出数组"""
        chunks = self.chunks(n_samples)
        show = self.progress and len(chunks) > 1
        logger.debug(f"Running {n_samples} {desc} in {len(chunks)} chunks on {self.workers} workers")

        if self.workers == 1 or len(chunks) == 1:
            results = [kernel(start, stop) for start, stop in tqdm(chunks, desc=desc, disable=not show, leave=False)]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                results = list(tqdm(executor.map(lambda c: kernel(*c), chunks),
                                    total=len(chunks), desc=desc, disable=not show, leave=False))
        return tuple(np.concatenate(parts) for parts in zip(*results))
