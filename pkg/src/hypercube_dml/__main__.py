import sys

from hypercube_dml.cli import main

sys.exit(main())
