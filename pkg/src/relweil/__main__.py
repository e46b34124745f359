import sys

from relweil.cli.main import main

sys.exit(main())
