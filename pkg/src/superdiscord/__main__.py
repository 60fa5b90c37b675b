from superdiscord.cli import main
import sys

sys.exit(main())
