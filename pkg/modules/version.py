"""
Version information for quatforms.
This module provides a central location for version information.
"""

# Version information
APP_VERSION = "0.1.0"  # Numeric version embedded in every JSON document
APP_VERSION_DISPLAY = f"v{APP_VERSION}"  # Display version for --version
CACHE_FORMAT_VERSION = "1"  # Bump when the class-set cache layout changes
