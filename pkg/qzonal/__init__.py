# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

__version__ = '0.1.0'
__author__ = 'Yuriy Sverchkov'
__license__ = 'BSD (3 clause)'

from qzonal.exactfield import QZonalError, RationalFunction, context
from qzonal.macdonald import Partition, SymmetricPolynomial, macdonald_p
from qzonal.report import Report
