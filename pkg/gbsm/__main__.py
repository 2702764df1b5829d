import sys

from gbsm.main import main

sys.exit(main())
