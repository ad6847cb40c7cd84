import sys

from spreadec.cli import main

sys.exit(main())
