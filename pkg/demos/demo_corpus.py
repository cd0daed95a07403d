"""Shared miniature corpus for the demo scripts: "avocat" as lawyer and fruit."""

import tempfile
from pathlib import Path

from lexatlas import BuildConfig, FilterConfig, Mode, build_resource, load_corpus, load_lexicon

COURTROOM = """\
Un avocat défend un client devant le tribunal. Le tribunal écoute un
avocat célèbre. Un avocat prépare le procès avec le client. Le juge
interroge un avocat devant le tribunal. Un avocat plaide au procès.
Le client remercie un avocat après le procès.
"""

KITCHEN = """\
Un avocat mûr parfume la salade. La salade verte accompagne un avocat.
Un avocat bien mûr se coupe facilement. Le cuisinier coupe un avocat
pour la salade. Un avocat onctueux enrichit la sauce. La sauce verte
contient un avocat mûr.
"""

LEXICON = """\
un\tun\tDET
une\tun\tDET
le\tle\tDET
la\tle\tDET
les\tle\tDET
devant\tdevant\tADP
avec\tavec\tADP
après\taprès\tADP
au\tà\tADP
pour\tpour\tADP
se\tse\tPRON
bien\tbien\tADV
facilement\tfacilement\tADV
avocat\tavocat\tNOUN
client\tclient\tNOUN
tribunal\ttribunal\tNOUN
juge\tjuge\tNOUN
procès\tprocès\tNOUN
salade\tsalade\tNOUN
sauce\tsauce\tNOUN
cuisinier\tcuisinier\tNOUN
défend\tdéfendre\tVERB
écoute\técouter\tVERB
prépare\tpréparer\tVERB
interroge\tinterroger\tVERB
plaide\tplaider\tVERB
remercie\tremercier\tVERB
parfume\tparfumer\tVERB
accompagne\taccompagner\tVERB
coupe\tcouper\tVERB
enrichit\tenrichir\tVERB
contient\tcontenir\tVERB
célèbre\tcélèbre\tADJ
mûr\tmûr\tADJ
vert\tvert\tADJ
verte\tvert\tADJ
onctueux\tonctueux\tADJ
"""


def open_config() -> BuildConfig:
    # tiny corpus: no frequency stoplist, no quantile cut
    return BuildConfig(
        mode=Mode.SENTENCE,
        filter=FilterConfig(stop_top_k=0, context_quantile=1.0, min_pair_count=2, reciprocal_filter=True),
    )


def build(*texts: str):
    """Write the given text blocks as one corpus file and run the pipeline."""
    workdir = Path(tempfile.mkdtemp(prefix="lexatlas-demo-"))
    (workdir / "corpus").mkdir()
    (workdir / "corpus" / "avocat.txt").write_text("".join(texts), encoding="utf-8")
    docs = load_corpus(workdir / "corpus")
    lexicon = load_lexicon(LEXICON.splitlines(), source="demo lexicon")
    return build_resource(docs, open_config(), lexicon), workdir
