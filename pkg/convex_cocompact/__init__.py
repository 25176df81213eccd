import datetime

name = "convex-cocompact"
package_name = "convex_cocompact"
author = "convex-cocompact developers"
author_email = ""
description = "Convex projective geometry: Hilbert metric, convex cores, rank-one dynamics and Anosov audits"
url = None
project_urls: dict[str, str] = {}
copyright = f"Copyright {datetime.date.today().strftime('%Y')}, convex-cocompact developers"
version = "0.1.0"
