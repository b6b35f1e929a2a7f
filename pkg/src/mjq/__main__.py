import sys

from mjq.cli import main

sys.exit(main())
