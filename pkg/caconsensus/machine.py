#!/usr/bin/env python3
# -*- coding: utf-8 -*-
from dataclasses import dataclass
from typing import Dict, Type, Union, Optional, List, TYPE_CHECKING

from luckydonaldUtils.exceptions import assert_type_or_raise
from luckydonaldUtils.logger import logging
from luckydonaldUtils.typing import JSONType

from .data import Bounds
from .exceptions import ContractViolationError, ResourceBoundError
from .rules import Rule, Powers
if TYPE_CHECKING:
    from .certifiers import Certificate
# end if

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


@dataclass(init=False, repr=True)
class CertifierInstancesItem(object):
    """
    This holds a registered certificate class and its position in the certification order.
    """
    machine: 'CertifierMachine'
    position: int
    certificate: Type['Certificate']

    def __init__(self, machine: 'CertifierMachine', position: int, certificate: Type['Certificate']):
        self.machine = machine
        self.position = position
        self.certificate = certificate
    # end def

    @property
    def name(self) -> str:
        return self.certificate.kind
    # end def
# end class


@dataclass(init=False, repr=True)
class CertifierMachine(object):
    """
    Ordered registry of certificate classes.
    Certification tries them in registration order, the first certificate found wins.
    """
    instances: Dict[str, CertifierInstancesItem]

    def __init__(self):
        self.instances = {}
    # end def

    def register(self, certificate_to_register: Type['Certificate']) -> Type['Certificate']:
        """
        Adds a certificate class, usable as class decorator.
        :param certificate_to_register: The certificate class to register
        :return: the class again, unchanged.
        """
        from .certifiers import Certificate
        if not (isinstance(certificate_to_register, type) and issubclass(certificate_to_register, Certificate)):
            raise TypeError(
                f"the parameter certificate_to_register should be subclass of {Certificate!r}, "
                f"but is type {type(certificate_to_register)}: {certificate_to_register!r}"
            )
        # end if
        name = certificate_to_register.kind
        if name in self.instances:
            raise ValueError(f'A certificate with kind {name!r} is already registered.')
        # end if
        self.instances[name] = CertifierInstancesItem(
            machine=self, position=len(self.instances), certificate=certificate_to_register,
        )
        logger.debug(f'registered certificate {name!r} at position {len(self.instances) - 1}')
        return certificate_to_register
    # end def

    @property
    def kinds(self) -> List[str]:
        return list(self.instances.keys())
    # end def

    def __getitem__(self, kind: str) -> Type['Certificate']:
        try:
            return self.instances[kind].certificate
        except KeyError:
            raise ContractViolationError(f'No certificate of kind {kind!r}, known are {self.kinds!r}.')
        # end try
    # end def

    def certify(self, rule: Rule, bounds: Bounds = None, powers: Powers = None) -> Optional['Certificate']:
        """
        Runs the certifiers in order. A certifier running out of budget counts as "no certificate".
        """
        assert_type_or_raise(rule, Rule, parameter_name='rule')
        bounds = Bounds() if bounds is None else bounds
        if powers is None:
            powers = Powers(rule, max_table_bits=bounds.max_table_bits)
        # end if
        for kind, item in self.instances.items():
            if not item.certificate.applies_to(rule):
                logger.debug(f'{kind!r} certifier does not apply to {rule!r}')
                continue
            # end if
            try:
                certificate = item.certificate.certify(rule, bounds=bounds, powers=powers)
            except ResourceBoundError as e:
                logger.warning(f'{kind!r} certification of {rule.rule_id} inconclusive: {e}')
                continue
            # end try
            if certificate is not None:
                logger.debug(f'{rule.rule_id} certified: {certificate!r}')
                return certificate
            # end if
        # end for
        return None
    # end def

    def from_dict(self, data: Union[Dict[str, JSONType], 'Certificate']) -> 'Certificate':
        from .certifiers import Certificate
        if isinstance(data, Certificate):
            return data
        # end if
        if not isinstance(data, dict) or 'class' not in data:
            raise ContractViolationError(f'Not a certificate: {data!r}')
        # end if
        try:
            return self[data['class']].from_dict(data)
        except (KeyError, TypeError) as e:
            raise ContractViolationError(f'Malformed {data["class"]!r} certificate {data!r}: missing or bad field {e}')
        # end try
    # end def

    def revalidate(
        self, rule: Rule, certificate: Union[Dict[str, JSONType], 'Certificate'], bounds: Bounds = None,
    ) -> bool:
        """ Re-runs the checks of a stored certificate with its own parameters. """
        certificate = self.from_dict(certificate)
        bounds = Bounds() if bounds is None else bounds
        if not certificate.applies_to(rule):
            return False
        # end if
        return certificate.revalidate(rule, bounds=bounds)
    # end def
# end class
