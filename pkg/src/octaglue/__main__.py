import sys

from octaglue.cli import main

sys.exit(main())
