#!/usr/bin/env python3
"""
Census Manager for the brute-force count of smooth positroids
"""

import asyncio
import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from libs.decorated_lib import decorations
from libs.enumeration_lib import census, census_rows_from_counts
from libs.permutation_lib import Permutation, all_permutations
from libs.smoothness_lib import smooth_component_count

logger = logging.getLogger(__name__)

# Above this n the sweep over S_n is impractical
MAX_BRUTE_FORCE_N = 9

EXECUTORS = {"process": ProcessPoolExecutor, "thread": ThreadPoolExecutor}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value}")
    return value


def classify_batch(batch: Sequence[Tuple[int, ...]]) -> Dict[str, Any]:
    """Classify every decoration of the permutations in a batch

    Returns plain counters so the result pickles across processes.
    """
    by_rank = Counter()
    by_components = Counter()
    decorated = 0
    for values in batch:
        for dp in decorations(Permutation(tuple(values))):
            decorated += 1
            blocks = smooth_component_count(dp)
            if blocks is None:
                continue
            by_rank[dp.k] += 1
            by_components[blocks] += 1
    return {
        "decorated": decorated,
        "smooth": sum(by_rank.values()),
        "s1": dict(by_rank),
        "s2": dict(by_components),
    }


class CensusManager:
    """Census manager sweeping all decorated permutations in batches"""

    def __init__(
        self, max_workers: Optional[int] = None, batch_size: Optional[int] = None, executor_kind: str = "process"
    ):
        """Initialize census manager from arguments or the environment"""
        load_dotenv()

        self.max_workers = max_workers or _env_int("POSITROID_THREADS", os.cpu_count() or 1)
        self.batch_size = batch_size or _env_int("POSITROID_BATCH_SIZE", 500)
        if executor_kind not in EXECUTORS:
            raise ValueError(f"Unknown executor {executor_kind!r}, expected one of {', '.join(EXECUTORS)}")
        self.executor_kind = executor_kind
        self.executor = None

        logger.info(
            f"CensusManager initialized with {self.max_workers} {executor_kind} workers, batch size {self.batch_size}"
        )

    def fetch_permutations(self, n: int) -> List[Tuple[int, ...]]:
        """All underlying permutations of [n] as value tuples"""
        if not 1 <= n <= MAX_BRUTE_FORCE_N:
            raise ValueError(f"Brute-force census supports 1 <= n <= {MAX_BRUTE_FORCE_N}, got {n}")
        perms = [perm.values for perm in all_permutations(n)]
        logger.info(f"Fetched {len(perms)} permutations of [{n}]")
        return perms

    def create_batches(
        self, perms: List[Tuple[int, ...]], batch_size: Optional[int] = None
    ) -> List[List[Tuple[int, ...]]]:
        """Split permutations into batches of the specified size"""
        batch_size = batch_size or self.batch_size
        batches = [perms[i:i + batch_size] for i in range(0, len(perms), batch_size)]
        logger.info(f"Created {len(batches)} batches with batch size {batch_size}")
        return batches

    async def process_batch_async(self, batch: List[Tuple[int, ...]], batch_number: int) -> Dict[str, Any]:
        """Run one batch on the worker pool"""
        logger.info(f"Processing batch {batch_number} with {len(batch)} permutations")
        loop = asyncio.get_running_loop()
        counts = await loop.run_in_executor(self.executor, classify_batch, batch)
        logger.info(f"Batch {batch_number} completed: {counts['smooth']} smooth of {counts['decorated']}")
        counts["batch_number"] = batch_number
        counts["total_permutations"] = len(batch)
        counts["success"] = True
        return counts

    async def run_census_async(self, n: int) -> Dict[str, Any]:
        """Sweep every decorated permutation of [n] and tally the smooth ones"""
        start_time = datetime.now()
        logger.info(f"Starting brute-force census for n={n}")

        try:
            perms = self.fetch_permutations(n)
            batches = self.create_batches(perms)

            with EXECUTORS[self.executor_kind](max_workers=self.max_workers) as executor:
                self.executor = executor
                tasks = [self.process_batch_async(batch, i) for i, batch in enumerate(batches, 1)]
                batch_results = await asyncio.gather(*tasks, return_exceptions=True)
            self.executor = None

            all_results = []
            for i, result in enumerate(batch_results, 1):
                if isinstance(result, Exception):
                    logger.error(f"Batch {i} processing error: {result}")
                    all_results.append({
                        'batch_number': i,
                        'total_permutations': len(batches[i - 1]),
                        'success': False,
                        'error': str(result),
                    })
                else:
                    all_results.append(result)

            failed = [r for r in all_results if not r['success']]
            end_time = datetime.now()
            duration = (end_time - start_time).total_seconds()
            if failed:
                return {
                    'success': False,
                    'error': f"{len(failed)} of {len(batches)} batches failed",
                    'batch_results': all_results,
                    'start_time': start_time.isoformat(),
                    'end_time': end_time.isoformat(),
                    'duration_seconds': duration,
                }

            by_rank = Counter()
            by_components = Counter()
            for result in all_results:
                by_rank.update(result['s1'])
                by_components.update(result['s2'])
            rows = census_rows_from_counts(n, {"s1": by_rank, "s2": by_components})

            total_smooth = sum(r['smooth'] for r in all_results)
            logger.info(f"Census for n={n} completed: {total_smooth} smooth in {duration:.2f} seconds")

            return {
                'success': True,
                'n': n,
                'total_permutations': len(perms),
                'total_decorated': sum(r['decorated'] for r in all_results),
                'total_smooth': total_smooth,
                's1': rows["s1"].values(0),
                's2': rows["s2"].values(1),
                'batches_processed': len(batches),
                'max_workers': self.max_workers,
                'start_time': start_time.isoformat(),
                'end_time': end_time.isoformat(),
                'duration_seconds': duration,
                'batch_results': [
                    {k: v for k, v in r.items() if k not in ('s1', 's2')} for r in all_results
                ],
            }

        except Exception as e:
            logger.error(f"Brute-force census failed: {e}")
            return {
                'success': False,
                'error': str(e),
                'start_time': start_time.isoformat(),
                'end_time': datetime.now().isoformat(),
            }

    def run_census(self, n: int, save_to_json: bool = False, filename: Optional[str] = None) -> Dict[str, Any]:
        """Run the brute-force census (synchronous wrapper)"""
        result = asyncio.run(self.run_census_async(n))

        if save_to_json and result.get('success'):
            saved = self.save_results_to_json(result, filename)
            if saved:
                result['json_file'] = saved

        return result

    def save_results_to_json(self, results: Dict[str, Any], filename: Optional[str] = None) -> Optional[str]:
        """Save census results to JSON file"""
        if filename is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filename = f"census_results_{timestamp}.json"

        try:
            with open(filename, 'w', encoding='utf-8') as f:
                json.dump(results, f, indent=2, ensure_ascii=False, sort_keys=True)

            logger.info(f"Results saved to {filename}")
            return filename
        except OSError as e:
            logger.error(f"Failed to save results to JSON: {e}")
            return None


def brute_force_census(n: int, manager: Optional[CensusManager] = None) -> Dict[str, Any]:
    """s1 and s2 rows for [n] by sweeping every decorated permutation"""
    manager = manager or CensusManager()
    result = manager.run_census(n)
    if not result['success']:
        raise RuntimeError(f"Brute-force census failed: {result['error']}")
    return result


def main():
    """Demo function for census manager"""
    load_dotenv()
    logging.basicConfig(level=os.getenv("POSITROID_LOG_LEVEL", "INFO").upper())

    print("Census Manager Demo")
    print("=" * 30)

    try:
        manager = CensusManager()
        n = 6
        result = manager.run_census(n)

        if result['success']:
            expected = census(n)
            print("✅ Brute-force census completed successfully!")
            print(f"Decorated permutations: {result['total_decorated']}")
            print(f"Smooth: {result['total_smooth']} (formula: {expected.totals[-1]})")
            print(f"s1 row: {','.join(str(c) for c in result['s1'])}")
            print(f"s2 row: {','.join(str(c) for c in result['s2'])}")
            print(f"Batches processed: {result['batches_processed']}")
            print(f"Total duration: {result['duration_seconds']:.2f}s")
        else:
            print(f"❌ Census failed: {result.get('error')}")

    except Exception as e:
        print(f"❌ Error: {e}")


if __name__ == "__main__":
    main()
