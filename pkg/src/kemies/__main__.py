import sys

from kemies.cli import main

sys.exit(main())
