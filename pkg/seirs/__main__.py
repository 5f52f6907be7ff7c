import sys

from seirs.cli.main import main

sys.exit(main())
