import sys

from bvft.cli import main

sys.exit(main())
