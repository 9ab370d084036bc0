import sys

from gpcactus.cli import main

sys.exit(main())
