import sys

from heckecells.cli import main

sys.exit(main())
