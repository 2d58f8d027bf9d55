import sys

from evalxai.src.harness.cli import main

sys.exit(main())
