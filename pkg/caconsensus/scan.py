#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Scanning a rule space: canonical representatives, consensus filter, certification, resumable output.
"""
import io
import os
import csv
import json
import random
from collections import Counter, OrderedDict
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from functools import partial
from typing import Union, Dict, List, Tuple, Iterable, Iterator, Generator

from luckydonaldUtils.exceptions import assert_type_or_raise
from luckydonaldUtils.logger import logging
from luckydonaldUtils.typing import JSONType

from . import Extents
from .certifiers import certifiers
from .data import (
    Bounds, ScanRecord, Progress, CSV_HEADER, VERDICT_CANDIDATE, VERDICT_REJECTED, VERDICT_INCONCLUSIVE,
    CLASS_UNCHARACTERISED, to_json_str, read_checked_json, write_checked_json, validation_timestamp,
)
from .dynamics import PATTERN_LENGTHS, PatternVector, consensus_counts
from .exceptions import (
    ContractViolationError, UnsupportedRuleError, ResourceBoundError, ScanAbortedError, CheckpointIntegrityError,
)
from .rules import Rule, wolfram_decode, is_canonical, orbit_size, format_rule_id, parse_rule_id

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


CHECKPOINT_VERSION = 1
SAMPLE_ATTEMPTS_PER_RULE = 1000

# published full radius 2 results, L = 5..20.
RADIUS_TWO_REFERENCE = OrderedDict([
    ('candidates', 54928),
    ('patterns', 485),
    ('A-pattern', 30230),
    ('B-pattern', 14680),
    ('C-pattern', 1223),
    ('A certified', 27251),
    ('B certified', 12294),
    ('C certified', 709),
])


def parse_subspace(text: str) -> Tuple[str, Union[None, Tuple[int, int], Tuple[int, ...], int]]:
    """
    'full', 'range:A-B' (inclusive), 'list:N,N,...' or 'sample:N'.

    >>> parse_subspace('range:10-20')
    ('range', (10, 20))
    >>> parse_subspace('list:124,110')
    ('list', (110, 124))
    """
    text = text.strip()
    if text == 'full':
        return 'full', None
    # end if
    kind, _, argument = text.partition(':')
    try:
        if kind == 'range':
            start, end = argument.split('-', maxsplit=1)
            start, end = int(start), int(end)
            if end < start:
                raise ContractViolationError(f'Empty rule range {text!r}.')
            # end if
            return 'range', (start, end)
        elif kind == 'list':
            numbers = tuple(sorted({int(part) for part in argument.split(',') if part.strip()}))
            if not numbers:
                raise ContractViolationError(f'Empty rule list {text!r}.')
            # end if
            return 'list', numbers
        elif kind == 'sample':
            size = int(argument)
            if size < 1:
                raise ContractViolationError(f'Sample size must be positive, got {size}.')
            # end if
            return 'sample', size
        # end if
    except ValueError as e:
        if isinstance(e, ContractViolationError):
            raise
        # end if
        raise ContractViolationError(f'Malformed subspace {text!r}: {e}')
    # end try
    raise ContractViolationError(f'Unknown subspace {text!r}, use full, range:A-B, list:N,N or sample:N.')
# end def


class ScanJob(object):
    """
    Everything a scan needs, stored in its checkpoint so it can be resumed from that alone.
    """
    extents: Extents
    lengths: Tuple[int, ...]
    bounds: Bounds
    subspace: str
    seed: Union[int, None]
    workers: int
    output: Union[str, None]
    certificates: Union[str, None]
    checkpoint: Union[str, None]
    batch_size: int
    retries: int

    def __init__(
        self,
        extents: Extents = (2, 2),
        lengths: Iterable[int] = PATTERN_LENGTHS,
        bounds: Bounds = None,
        subspace: str = 'full',
        seed: Union[int, None] = None,
        workers: int = 1,
        output: Union[str, None] = None,
        certificates: Union[str, None] = None,
        checkpoint: Union[str, None] = None,
        batch_size: int = 256,
        retries: int = 2,
    ):
        extents = tuple(extents)
        if extents[0] != extents[1]:
            raise UnsupportedRuleError(f'Scans need symmetric extents, got {extents}.')
        # end if
        lengths = tuple(lengths)
        if not lengths or any(b <= a for a, b in zip(lengths, lengths[1:])):
            raise ContractViolationError(f'The length range must be non-empty and ascending, got {lengths!r}.')
        # end if
        kind, _ = parse_subspace(subspace)
        if kind == 'sample' and seed is None:
            seed = 0
        # end if
        assert_type_or_raise(workers, int, parameter_name='workers')
        if workers < 1 or batch_size < 1 or retries < 0:
            raise ContractViolationError('workers and batch_size must be positive, retries non-negative.')
        # end if
        self.extents = extents
        self.lengths = lengths
        self.bounds = Bounds() if bounds is None else bounds
        self.subspace = subspace
        self.seed = seed
        self.workers = workers
        self.output = output
        self.certificates = certificates
        if output is not None and certificates is None:
            self.certificates = os.path.splitext(output)[0] + '.certificates.jsonl'
        # end if
        self.checkpoint = checkpoint
        self.batch_size = batch_size
        self.retries = retries
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        return {
            'extents': list(self.extents),
            'lengths': list(self.lengths),
            'bounds': self.bounds.to_dict(),
            'subspace': self.subspace,
            'seed': self.seed,
            'workers': self.workers,
            'output': self.output,
            'certificates': self.certificates,
            'checkpoint': self.checkpoint,
            'batch_size': self.batch_size,
            'retries': self.retries,
        }
    # end def

    @classmethod
    def from_dict(cls, data: Dict[str, JSONType]) -> 'ScanJob':
        if isinstance(data, cls):
            return data
        # end if
        return cls(
            extents=tuple(data['extents']),
            lengths=tuple(data['lengths']),
            bounds=Bounds.from_dict(data['bounds']),
            subspace=data['subspace'],
            seed=data['seed'],
            workers=data['workers'],
            output=data['output'],
            certificates=data['certificates'],
            checkpoint=data['checkpoint'],
            batch_size=data['batch_size'],
            retries=data['retries'],
        )
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'extents={self.extents!r}, '
            f'lengths={self.lengths!r}, '
            f'bounds={self.bounds!r}, '
            f'subspace={self.subspace!r}, '
            f'seed={self.seed!r}, '
            f'workers={self.workers!r}, '
            f'output={self.output!r}, '
            f'certificates={self.certificates!r}, '
            f'checkpoint={self.checkpoint!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def _table_entries(extents: Extents) -> int:
    return 1 << (extents[0] + extents[1] + 1)
# end def


def _sample_canonical(extents: Extents, size: int, seed: int) -> List[int]:
    rng = random.Random(seed)
    entries = _table_entries(extents)
    chosen = set()
    attempts = 0
    while len(chosen) < size:
        attempts += 1
        if attempts > SAMPLE_ATTEMPTS_PER_RULE * size:
            raise ContractViolationError(
                f'Could not draw {size} distinct canonical rules in {attempts - 1} attempts, is the sample larger than the space?'
            )
        # end if
        number = rng.getrandbits(entries)
        if number not in chosen and is_canonical(wolfram_decode(number, extents)):
            chosen.add(number)
        # end if
    # end while
    return sorted(chosen)
# end def


def _candidate_numbers(extents: Extents, subspace: str, seed: Union[int, None]) -> Iterator[int]:
    kind, argument = parse_subspace(subspace)
    limit = 1 << _table_entries(extents)
    if kind == 'full':
        return iter(range(limit))
    elif kind == 'range':
        start, end = argument
        if end >= limit:
            raise ContractViolationError(f'Rule range {subspace!r} exceeds the space size {limit}.')
        # end if
        return iter(range(start, end + 1))
    elif kind == 'list':
        if argument[-1] >= limit:
            raise ContractViolationError(f'Rule {argument[-1]} exceeds the space size {limit}.')
        # end if
        return iter(argument)
    # end if
    return iter(_sample_canonical(extents, argument, 0 if seed is None else seed))
# end def


def canonical_rules(numbers: Iterable[int], extents: Extents) -> Generator[Rule, None, None]:
    """ The rules among `numbers` that are the smallest member of their symmetry class. """
    for number in numbers:
        rule = wolfram_decode(number, extents)
        if is_canonical(rule):
            yield rule
        # end if
    # end for
# end def


def enumerate_canonical(
    extents: Extents, subspace: str = 'full', seed: Union[int, None] = None, after: Union[int, None] = None,
) -> Generator[Rule, None, None]:
    """
    One rule per symmetry class meeting the subspace, ascending by Wolfram number.
    With `after` only rules with a larger number are produced.
    """
    extents = tuple(extents)
    if extents[0] != extents[1]:
        raise UnsupportedRuleError(f'Enumeration needs symmetric extents, got {extents}.')
    # end if
    yield from canonical_rules(_numbers_after(_candidate_numbers(extents, subspace, seed), after), extents)
# end def


def _numbers_after(numbers: Iterator[int], after: Union[int, None]) -> Iterator[int]:
    if after is None:
        return numbers
    # end if
    return (number for number in numbers if number > after)
# end def


def analyse_rule(number: int, extents: Extents, lengths: Tuple[int, ...], bounds: Bounds) -> ScanRecord:
    """ Filter, pattern and certificate of a single rule. """
    rule = wolfram_decode(number, tuple(extents))
    try:
        reject_length, counts = consensus_counts(rule, lengths, max_length=bounds.max_length)
    except ResourceBoundError as e:
        logger.warning(f'{rule.rule_id} inconclusive: {e}')
        return ScanRecord(rule=number, verdict=VERDICT_INCONCLUSIVE)
    # end try
    if reject_length is not None:
        return ScanRecord(rule=number, verdict=VERDICT_REJECTED, reject_length=reject_length)
    # end if
    certificate = certifiers.certify(rule, bounds=bounds)
    if certificate is None:
        return ScanRecord(rule=number, verdict=VERDICT_CANDIDATE, class_label=CLASS_UNCHARACTERISED, pattern=counts)
    # end if
    return ScanRecord(
        rule=number, verdict=VERDICT_CANDIDATE, class_label=certificate.kind, pattern=counts,
        certificate=certificate.to_dict(),
    )
# end def


def _analyse_batch(numbers: List[int], extents: Extents, lengths: Tuple[int, ...], bounds: Bounds) -> List[ScanRecord]:
    """ Runs in the workers: drops the non-canonical numbers of the batch, analyses the rest. """
    return [analyse_rule(rule.number, extents, lengths, bounds) for rule in canonical_rules(numbers, extents)]
# end def


class _BatchRunner(object):
    """
    Runs batches in a process pool, or in this process for a single worker.
    `executor.map` keeps input order, so the worker count never changes the output.
    """
    job: ScanJob
    executor: Union[ProcessPoolExecutor, None]

    def __init__(self, job: ScanJob):
        self.job = job
        self.executor = None
    # end def

    def __enter__(self) -> '_BatchRunner':
        if self.job.workers > 1:
            self.executor = ProcessPoolExecutor(max_workers=self.job.workers)
        # end if
        return self
    # end def

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None
        # end if
    # end def

    def _run_once(self, numbers: List[int]) -> List[ScanRecord]:
        job = self.job
        if self.executor is None:
            return _analyse_batch(numbers, job.extents, job.lengths, job.bounds)
        # end if
        chunk_size = max(1, len(numbers) // (job.workers * 4))
        chunks = [numbers[i:i + chunk_size] for i in range(0, len(numbers), chunk_size)]
        worker = partial(_analyse_batch, extents=job.extents, lengths=job.lengths, bounds=job.bounds)
        records = []
        for chunk_records in self.executor.map(worker, chunks):
            records.extend(chunk_records)
        # end for
        return records
    # end def

    def run(self, numbers: List[int]) -> List[ScanRecord]:
        attempt = 0
        while True:
            try:
                return self._run_once(numbers)
            except BrokenProcessPool as e:
                logger.warning(f'worker pool broke on batch starting at rule {numbers[0]}: {e}')
                if self.executor is not None:
                    self.executor.shutdown(wait=False)
                    self.executor = ProcessPoolExecutor(max_workers=self.job.workers)
                # end if
                error = e
            except (ContractViolationError, UnsupportedRuleError):
                raise
            except Exception as e:
                logger.warning(f'batch starting at rule {numbers[0]} failed: {e!r}')
                error = e
            # end try
            attempt += 1
            if attempt > self.job.retries:
                raise ScanAbortedError(
                    f'Batch starting at rule {numbers[0]} failed {attempt} times, last error: {error!r}'
                ) from error
            # end if
            logger.info(f'retrying batch starting at rule {numbers[0]} (attempt {attempt + 1})')
        # end while
    # end def
# end class


def _batches(items: Iterable[int], size: int) -> Generator[List[int], None, None]:
    batch = []
    for item in items:
        batch.append(item)
        if len(batch) >= size:
            yield batch
            batch = []
        # end if
    # end for
    if batch:
        yield batch
    # end if
# end def


def scan_batches(job: ScanJob, after: Union[int, None] = None) -> Generator[Tuple[int, List[ScanRecord]], None, None]:
    """
    (last rule number of the batch, records of its canonical rules) per batch of `job.batch_size` rule numbers.
    The workers sort out the non-canonical numbers, so a batch may have no records at all.
    """
    numbers = _numbers_after(_candidate_numbers(job.extents, job.subspace, job.seed), after)
    with _BatchRunner(job) as runner:
        for batch in _batches(numbers, job.batch_size):
            records = runner.run(batch)
            logger.debug(f'analysed rules {batch[0]} to {batch[-1]}, {len(records)} canonical')
            yield batch[-1], records
        # end for
    # end with
# end def


def scan(job: ScanJob, after: Union[int, None] = None) -> Generator[ScanRecord, None, None]:
    """ One record per canonical rule of the job's subspace, ascending. """
    for _, records in scan_batches(job, after=after):
        yield from records
    # end for
# end def


def checkpoint_save(job: ScanJob, progress: Progress, path: Union[str, None] = None) -> str:
    path = job.checkpoint if path is None else path
    if path is None:
        raise ContractViolationError('The job has no checkpoint path.')
    # end if
    write_checked_json(path, {
        'version': CHECKPOINT_VERSION,
        'job': job.to_dict(),
        'progress': progress.to_dict(),
    })
    logger.info(f'checkpoint written to {path!r}: {progress.records} records, cursor {progress.cursor}')
    return path
# end def


def checkpoint_load(path: str) -> Tuple[ScanJob, Progress]:
    payload = read_checked_json(path)
    try:
        if payload['version'] != CHECKPOINT_VERSION:
            raise CheckpointIntegrityError(f'Checkpoint {path!r} has unknown version {payload["version"]!r}.')
        # end if
        return ScanJob.from_dict(payload['job']), Progress.from_dict(payload['progress'])
    except (KeyError, TypeError) as e:
        raise CheckpointIntegrityError(f'Checkpoint {path!r} is malformed: {e!r}')
    # end try
# end def


def csv_lines(records: Iterable[ScanRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    for record in records:
        writer.writerow(record.csv_row())
    # end for
    return buffer.getvalue()
# end def


def certificate_lines(records: Iterable[ScanRecord], extents: Extents) -> str:
    lines = []
    for record in records:
        if record.certificate is None:
            continue
        # end if
        lines.append(to_json_str({
            'rule': format_rule_id(wolfram_decode(record.rule, extents)),
            'class': record.class_label,
            'certificate': record.certificate,
            'validated_at': validation_timestamp(),
        }))
    # end for
    return ''.join(line + '\n' for line in lines)
# end def


def _truncate(path: str, offset: int) -> None:
    with open(path, 'r+b') as f:
        f.truncate(offset)
    # end with
# end def


def run_scan(job: ScanJob = None, resume: Union[str, None] = None, bound_overrides: Dict[str, int] = None) -> Progress:
    """
    Runs a job to completion, writing CSV and certificate output and, if configured, a checkpoint after every batch.
    With `resume` the job and position come from that checkpoint and the outputs are cut back to it first.
    `bound_overrides` (bound name -> value) must agree with the checkpointed bounds of a resumed job.
    """
    if resume is not None:
        job, progress = checkpoint_load(resume)
        job.checkpoint = resume
        conflicts = {
            name: (getattr(job.bounds, name), value) for name, value in (bound_overrides or {}).items()
            if getattr(job.bounds, name) != value
        }
        if conflicts:
            details = ', '.join(f'{name} is {stored!r}, not {given!r}' for name, (stored, given) in sorted(conflicts.items()))
            raise ContractViolationError(f'Checkpoint {resume!r} was written with other bounds: {details}.')
        # end if
        if progress.finished:
            logger.info(f'checkpoint {resume!r} belongs to a finished scan, nothing to do')
            return progress
        # end if
        _truncate(job.output, progress.csv_offset)
        _truncate(job.certificates, progress.jsonl_offset)
        logger.info(f'resuming after rule {progress.cursor} with {progress.records} records written')
    else:
        if job is None or job.output is None:
            raise ContractViolationError('A scan needs an output path.')
        # end if
        with open(job.output, 'wb') as f:
            f.write((','.join(CSV_HEADER) + '\n').encode('utf-8'))
        # end with
        with open(job.certificates, 'wb'):
            pass
        # end with
        progress = Progress(
            csv_offset=os.path.getsize(job.output), jsonl_offset=os.path.getsize(job.certificates),
        )
        if job.checkpoint:
            checkpoint_save(job, progress)
        # end if
    # end if
    with open(job.output, 'ab') as csv_file, open(job.certificates, 'ab') as jsonl_file:
        try:
            for last_number, records in scan_batches(job, after=progress.cursor):
                csv_file.write(csv_lines(records).encode('utf-8'))
                jsonl_file.write(certificate_lines(records, job.extents).encode('utf-8'))
                for f in (csv_file, jsonl_file):
                    f.flush()
                    os.fsync(f.fileno())
                # end for
                progress.cursor = last_number
                progress.records += len(records)
                progress.csv_offset = csv_file.tell()
                progress.jsonl_offset = jsonl_file.tell()
                if job.checkpoint:
                    checkpoint_save(job, progress)
                # end if
                logger.info(f'{progress.records} rules written, last {progress.cursor}')
            # end for
        except ScanAbortedError:
            if job.checkpoint:
                checkpoint_save(job, progress)
            # end if
            raise
        # end try
    # end with
    progress.finished = True
    if job.checkpoint:
        checkpoint_save(job, progress)
    # end if
    return progress
# end def


def read_records(path: str) -> Generator[ScanRecord, None, None]:
    with open(path, 'r', encoding='utf-8', newline='') as f:
        for row in csv.DictReader(f):
            yield ScanRecord.from_csv_row(row)
        # end for
    # end with
# end def


def read_certificate_lines(path: str) -> Generator[Dict[str, JSONType], None, None]:
    with open(path, 'r', encoding='utf-8') as f:
        for number, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            # end if
            try:
                record = json.loads(line)
            except ValueError as e:
                raise ContractViolationError(f'{path}:{number}: not a JSON record: {e}')
            # end try
            if not isinstance(record, dict) or 'rule' not in record or 'certificate' not in record:
                raise ContractViolationError(f'{path}:{number}: certificate lines need "rule" and "certificate".')
            # end if
            yield record
        # end for
    # end with
# end def


def revalidate_certificates(
    lines: Iterable[Dict[str, JSONType]], bounds: Bounds = None,
) -> Generator[Tuple[str, bool], None, None]:
    """ (rule id, still valid) for every stored certificate line. """
    for line in lines:
        try:
            rule_id, certificate = line['rule'], line['certificate']
        except (KeyError, TypeError) as e:
            raise ContractViolationError(f'Certificate line without rule or certificate: {line!r} ({e!r})')
        # end try
        yield rule_id, certifiers.revalidate(parse_rule_id(rule_id), certificate, bounds=bounds)
    # end for
# end def


class PatternReport(object):
    """
    Candidates grouped by pattern vector, patterns in lexicographic order.
    """
    groups: 'OrderedDict[Tuple[int, ...], List[int]]'
    expanded: Dict[Tuple[int, ...], int]
    verdicts: Dict[str, int]
    class_patterns: Dict[str, int]
    class_patterns_expanded: Dict[str, int]
    certified: Dict[str, int]
    certified_expanded: Dict[str, int]

    def __init__(
        self, groups: 'OrderedDict[Tuple[int, ...], List[int]]', expanded: Dict[Tuple[int, ...], int],
        verdicts: Dict[str, int], class_patterns: Dict[str, int], class_patterns_expanded: Dict[str, int],
        certified: Dict[str, int], certified_expanded: Dict[str, int],
    ):
        self.groups = groups
        self.expanded = expanded
        self.verdicts = verdicts
        self.class_patterns = class_patterns
        self.class_patterns_expanded = class_patterns_expanded
        self.certified = certified
        self.certified_expanded = certified_expanded
    # end def

    @property
    def candidates(self) -> int:
        return self.verdicts.get(VERDICT_CANDIDATE, 0)
    # end def

    @property
    def candidates_expanded(self) -> int:
        return sum(self.expanded.values())
    # end def

    def summary(self) -> 'OrderedDict[str, Tuple[int, int]]':
        """ name -> (canonical count, orbit-expanded count) """
        result = OrderedDict([
            ('candidates', (self.candidates, self.candidates_expanded)),
            ('patterns', (len(self.groups), len(self.groups))),
        ])
        for label in ('A', 'B', 'C'):
            result[f'{label}-pattern'] = (self.class_patterns.get(label, 0), self.class_patterns_expanded.get(label, 0))
        # end for
        for label in ('A', 'B', 'C'):
            result[f'{label} certified'] = (self.certified.get(label, 0), self.certified_expanded.get(label, 0))
        # end for
        return result
    # end def

    def compare_reference(self, reference: Dict[str, int] = RADIUS_TWO_REFERENCE) -> List[str]:
        lines = []
        summary = self.summary()
        for name, expected in reference.items():
            canonical, expanded = summary[name]
            if canonical == expected:
                verdict = 'matches canonical count'
            elif expanded == expected:
                verdict = 'matches orbit-expanded count'
            else:
                verdict = 'DIFFERS'
            # end if
            lines.append(f'{name}: reference {expected}, canonical {canonical}, expanded {expanded}: {verdict}')
        # end for
        return lines
    # end def

    def to_text(self, min_count: int = 1, with_rules: bool = False) -> str:
        lines = [f'# {name}: {canonical} canonical, {expanded} orbit-expanded' for name, (canonical, expanded) in self.summary().items()]
        for verdict in (VERDICT_REJECTED, VERDICT_INCONCLUSIVE):
            lines.append(f'# {verdict}: {self.verdicts.get(verdict, 0)}')
        # end for
        for pattern_counts, rules in self.groups.items():
            if len(rules) < min_count:
                continue
            # end if
            line = f'{";".join(map(str, pattern_counts))}\t{len(rules)}\t{self.expanded[pattern_counts]}'
            if with_rules:
                line += '\t' + ','.join(map(str, rules))
            # end if
            lines.append(line)
        # end for
        return '\n'.join(lines)
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'patterns={len(self.groups)!r}, '
            f'verdicts={self.verdicts!r}, '
            f'certified={self.certified!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def pattern_report(
    records: Iterable[ScanRecord], extents: Extents = (2, 2), lengths: Tuple[int, ...] = PATTERN_LENGTHS,
) -> PatternReport:
    groups: Dict[Tuple[int, ...], List[int]] = {}
    expanded = Counter()
    verdicts = Counter()
    class_patterns = Counter()
    class_patterns_expanded = Counter()
    certified = Counter()
    certified_expanded = Counter()
    for record in records:
        verdicts[record.verdict] += 1
        if not record.is_candidate:
            continue
        # end if
        size = orbit_size(wolfram_decode(record.rule, tuple(extents)))
        groups.setdefault(record.pattern, []).append(record.rule)
        expanded[record.pattern] += size
        if len(record.pattern) == len(lengths):
            label = PatternVector(counts=record.pattern, lengths=tuple(lengths)).pattern_class()
            if label in ('A', 'B', 'C'):
                class_patterns[label] += 1
                class_patterns_expanded[label] += size
            # end if
        # end if
        if record.class_label in ('A', 'B', 'C'):
            certified[record.class_label] += 1
            certified_expanded[record.class_label] += size
        # end if
    # end for
    ordered = OrderedDict((key, sorted(groups[key])) for key in sorted(groups))
    return PatternReport(
        groups=ordered, expanded=dict(expanded), verdicts=dict(verdicts),
        class_patterns=dict(class_patterns), class_patterns_expanded=dict(class_patterns_expanded),
        certified=dict(certified), certified_expanded=dict(certified_expanded),
    )
# end def
