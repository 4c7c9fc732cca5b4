# Entry point for python -m qzonal
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

from qzonal.cli import main

if __name__ == '__main__':
    main()
