# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

from .dimeq_runner import main

main()
