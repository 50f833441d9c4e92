"""Bundled word stock for the synthetic generator.

A small hermetic replacement for external text sources: common English
words plus receipt-flavoured item and shop names.
"""

WORDS = tuple("""
the of and to in is was for on are with they be at one have this from word
but not what all were when your can said there use each which she how will
up other about out many then them these so some her would make like him
into time has look two more write go see number way could people my than
first water been call who oil its now find long down day did get come made
may part over new sound take only little work know place year live me back
give most very after thing our just name good sentence man think say great
where help through much before line right too mean old any same tell boy
follow came want show also around form three small set put end does another
well large must big even such because turn here why ask went men read need
land different home us move try kind hand picture again change off play
spell air away animal house point page letter mother answer found study
still learn should world high every near add food between own below country
plant last school father keep tree never start city earth eye light thought
head under story saw left few while along might close something seem next
hard open example begin life always those both paper together got group
often run important until children side feet car mile night walk white sea
began grow took river four carry state once book hear stop without second
late miss idea enough eat face watch far real almost let above girl
sometimes mountain cut young talk soon list song being leave family music
color dark machine note wait plan figure star box noun field rest correct
able pound done beauty drive stood contain front teach week final gave
green quick develop ocean warm free minute strong special mind behind clear
tail produce fact street inch multiply nothing course stay wheel full force
blue object decide surface deep moon island foot system busy test record
boat common gold possible plane stead dry wonder laugh thousand ago ran
check game shape equate hot brother egg ride cell believe fraction forest
sit race window store summer train sleep prove lone leg exercise wall catch
mount wish sky board joy winter written wild instrument kept glass grass
cow job edge sign visit past soft fun bright gas weather month million bear
finish happy hope flower clothe strange gone jump baby eight village meet
root buy raise solve metal whether push seven paragraph third shall held
hair describe cook floor either result burn hill safe cat century consider
type law bit coast copy phrase silent tall sand soil roll temperature
finger industry value fight lie beat excite natural view sense capital
chair danger fruit rich thick soldier process operate practice separate
difficult doctor please protect noon crop modern element hit student
corner party supply whose locate ring character insect caught period
indicate radio spoke atom human history effect electric expect bone rail
imagine provide agree thus gentle woman captain guess necessary sharp wing
create neighbor wash bat rather crowd corn compare poem string bell depend
meat rub tube famous dollar stream fear sight thin triangle planet hurry
chief colony clock mine tie enter major fresh search send yellow gun allow
print dead spot desert suit current lift rose arrive master track parent
shore division sheet substance favor connect post spend chord fat glad
original share station dad bread charge proper bar offer segment slave
duck instant market degree populate chick dear enemy reply drink occur
support speech nature range steam motion path liquid log meant quotient
teeth shell neck
""".split())

RECEIPT_ITEMS = tuple("""
MILK BREAD EGGS RICE PASTA SUGAR FLOUR BUTTER CHEESE APPLES BANANAS COFFEE
TEA JUICE WATER SOAP TOWELS BATTERY PAPER PENCIL NOTEBOOK TAPE GLUE CANDY
CEREAL YOGURT CHICKEN BEEF FISH ONIONS POTATOES TOMATOES LETTUCE CARROTS
PEPPER SALT OIL VINEGAR HONEY JAM CRACKERS COOKIES CHIPS SODA LEMONADE
""".split())

RECEIPT_SHOPS = tuple("""
CORNER MARKET DAILY GOODS GREEN GROCER CITY SUPPLY QUICK STOP VALUE STORE
SUNRISE FOODS RIVERSIDE MART METRO PANTRY OAK STREET DELI HARBOR TRADING
""".split())
