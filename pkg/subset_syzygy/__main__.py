import sys

from subset_syzygy.main import main

sys.exit(main())
