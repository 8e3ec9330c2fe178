import sys

from mdscodex.cli import main

sys.exit(main())
