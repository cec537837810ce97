#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import os
import json
import hashlib
from datetime import datetime, timezone
from dataclasses import dataclass, asdict, fields, replace
from typing import Union, Dict, List, Tuple

from luckydonaldUtils.logger import logging
from luckydonaldUtils.typing import JSONType

from .exceptions import ContractViolationError, CheckpointIntegrityError

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


CSV_HEADER = ('rule', 'verdict', 'reject_L', 'class', 'pattern')

VERDICT_CANDIDATE = 'candidate'
VERDICT_REJECTED = 'rejected'
VERDICT_INCONCLUSIVE = 'inconclusive'
VERDICTS = (VERDICT_CANDIDATE, VERDICT_REJECTED, VERDICT_INCONCLUSIVE)

CLASS_UNCHARACTERISED = 'uncharacterised'
CLASS_LABELS = ('A', 'B', 'C', CLASS_UNCHARACTERISED)


@dataclass(frozen=True)
class Bounds(object):
    """
    Every budget of the analysis in one place.

    Exponent bounds cut searches short ("inconclusive"), the size bounds are log2 of what may be allocated.
    """
    m_max: int = 5  # class A composition exponent
    b_n1_max: int = 5  # class B, 00 preservation and creation
    b_n2_max: int = 5  # class B, 00 growing to 000
    c_n1_max: int = 9  # class C, failing graph order
    c_n2_max: int = 5  # class C, 000 growing to 0000
    max_table_bits: int = 22
    max_block_bits: int = 24
    max_length: int = 26
    max_automaton_bits: int = 18

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, int) or value < 1:
                raise ContractViolationError(f'Bound {field.name} must be a positive integer, got {value!r}.')
            # end if
        # end for
    # end def

    def replace(self, **changes) -> 'Bounds':
        """ Copy with some bounds changed, `None` values are ignored. """
        return replace(self, **{key: value for key, value in changes.items() if value is not None})
    # end def

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)
    # end def

    @classmethod
    def from_dict(cls, data: Union[Dict[str, int], 'Bounds', None]) -> 'Bounds':
        if isinstance(data, cls):
            return data
        # end if
        if data is None:
            return cls()
        # end if
        known = {field.name for field in fields(cls)}
        return cls(**{key: value for key, value in data.items() if key in known})
    # end def
# end class


class ScanRecord(object):
    """
    One line of scan output: the verdict of the consensus filter for a canonical rule,
    and, for candidates, its pattern and class.
    """
    rule: int
    verdict: str
    reject_length: Union[int, None]
    class_label: Union[str, None]
    pattern: Union[Tuple[int, ...], None]
    certificate: Union[Dict[str, JSONType], None]

    def __init__(
        self,
        rule: int,
        verdict: str,
        reject_length: Union[int, None] = None,
        class_label: Union[str, None] = None,
        pattern: Union[Tuple[int, ...], List[int], None] = None,
        certificate: Union[Dict[str, JSONType], None] = None,
    ):
        if verdict not in VERDICTS:
            raise ContractViolationError(f'Unknown verdict {verdict!r}.')
        # end if
        if (verdict == VERDICT_CANDIDATE) != (pattern is not None):
            raise ContractViolationError(f'A pattern is present exactly for candidates, verdict was {verdict!r}.')
        # end if
        if class_label is not None and class_label not in CLASS_LABELS:
            raise ContractViolationError(f'Unknown class label {class_label!r}.')
        # end if
        if certificate is not None and certificate.get('class') != class_label:
            raise ContractViolationError(
                f'Class label {class_label!r} does not match certificate class {certificate.get("class")!r}.'
            )
        # end if
        self.rule = rule
        self.verdict = verdict
        self.reject_length = reject_length
        self.class_label = class_label
        self.pattern = None if pattern is None else tuple(pattern)
        self.certificate = certificate
    # end def

    @property
    def is_candidate(self) -> bool:
        return self.verdict == VERDICT_CANDIDATE
    # end def

    def csv_row(self) -> List[str]:
        return [
            str(self.rule),
            self.verdict,
            '' if self.reject_length is None else str(self.reject_length),
            '' if self.class_label is None else self.class_label,
            '' if self.pattern is None else ';'.join(str(count) for count in self.pattern),
        ]
    # end def

    @classmethod
    def from_csv_row(cls, row: Dict[str, str]) -> 'ScanRecord':
        pattern = row['pattern']
        return cls(
            rule=int(row['rule']),
            verdict=row['verdict'],
            reject_length=int(row['reject_L']) if row['reject_L'] else None,
            class_label=row['class'] or None,
            pattern=tuple(int(count) for count in pattern.split(';')) if pattern else None,
        )
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        return {
            'rule': self.rule,
            'verdict': self.verdict,
            'reject_L': self.reject_length,
            'class': self.class_label,
            'pattern': None if self.pattern is None else list(self.pattern),
            'certificate': self.certificate,
        }
    # end def

    @classmethod
    def from_dict(cls, data: Dict[str, JSONType]) -> 'ScanRecord':
        if isinstance(data, cls):
            return data
        # end if
        return cls(
            rule=data['rule'],
            verdict=data['verdict'],
            reject_length=data.get('reject_L'),
            class_label=data.get('class'),
            pattern=data.get('pattern'),
            certificate=data.get('certificate'),
        )
    # end def

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScanRecord):
            return NotImplemented
        # end if
        return self.to_dict() == other.to_dict()
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'rule={self.rule!r}, '
            f'verdict={self.verdict!r}, '
            f'reject_length={self.reject_length!r}, '
            f'class_label={self.class_label!r}, '
            f'pattern={self.pattern!r}, '
            f'certificate={self.certificate!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


class Progress(object):
    """
    How far a scan got: the last rule number analysed and the output file sizes after it.
    """
    cursor: Union[int, None]
    records: int
    csv_offset: int
    jsonl_offset: int
    finished: bool

    def __init__(
        self, cursor: Union[int, None] = None, records: int = 0,
        csv_offset: int = 0, jsonl_offset: int = 0, finished: bool = False,
    ):
        self.cursor = cursor
        self.records = records
        self.csv_offset = csv_offset
        self.jsonl_offset = jsonl_offset
        self.finished = finished
    # end def

    def to_dict(self) -> Dict[str, JSONType]:
        return {
            'cursor': self.cursor,
            'records': self.records,
            'csv_offset': self.csv_offset,
            'jsonl_offset': self.jsonl_offset,
            'finished': self.finished,
        }
    # end def

    @classmethod
    def from_dict(cls, data: Dict[str, JSONType]) -> 'Progress':
        if isinstance(data, cls):
            return data
        # end if
        return cls(
            cursor=data['cursor'],
            records=data['records'],
            csv_offset=data['csv_offset'],
            jsonl_offset=data['jsonl_offset'],
            finished=data['finished'],
        )
    # end def

    def __repr__(self):
        return (
            f'{self.__class__.__name__}('
            f'cursor={self.cursor!r}, '
            f'records={self.records!r}, '
            f'csv_offset={self.csv_offset!r}, '
            f'jsonl_offset={self.jsonl_offset!r}, '
            f'finished={self.finished!r}'
            ')'
        )
    # end def

    __str__ = __repr__
# end class


def to_json_str(data: JSONType) -> str:
    """ Stable serialisation: sorted keys, no whitespace. """
    return json.dumps(data, sort_keys=True, separators=(',', ':'))
# end def


def checksum(data: JSONType) -> str:
    return hashlib.sha256(to_json_str(data).encode('utf-8')).hexdigest()
# end def


def write_json_atomic(path: str, data: JSONType) -> None:
    tmp_path = f'{path}.tmp'
    with open(tmp_path, 'w', encoding='utf-8') as f:
        f.write(to_json_str(data))
        f.write('\n')
        f.flush()
        os.fsync(f.fileno())
    # end with
    os.replace(tmp_path, path)
# end def


def read_checked_json(path: str) -> Dict[str, JSONType]:
    """ Loads a `{"payload": ..., "checksum": ...}` document, verifying the checksum. """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
        # end with
    except (OSError, ValueError) as e:
        raise CheckpointIntegrityError(f'Could not read checkpoint {path!r}: {e}')
    # end try
    if not isinstance(document, dict) or 'payload' not in document or 'checksum' not in document:
        raise CheckpointIntegrityError(f'Checkpoint {path!r} is malformed.')
    # end if
    if checksum(document['payload']) != document['checksum']:
        raise CheckpointIntegrityError(f'Checkpoint {path!r} failed its checksum.')
    # end if
    return document['payload']
# end def


def write_checked_json(path: str, payload: JSONType) -> None:
    write_json_atomic(path, {'payload': payload, 'checksum': checksum(payload)})
# end def


def validation_timestamp() -> str:
    """ Now, or `SOURCE_DATE_EPOCH` when that is set, as ISO 8601 UTC. """
    epoch = os.environ.get('SOURCE_DATE_EPOCH')
    if epoch:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        moment = datetime.now(tz=timezone.utc)
    # end if
    return moment.replace(microsecond=0).isoformat()
# end def
