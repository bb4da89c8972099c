"""Reference values of log-gamma, digamma and trigamma.

Computed once with mpmath at 60 working digits and rounded to 50 digits.
"""

DIGAMMA = {
    '0.25': '-4.2274535333762654080895301460966835773672444387082',
    '0.5': '-1.9635100260214234794409763329987555671931596046604',
    '1': '-0.57721566490153286060651209008240243104215933593992',
    '1.5': '0.036489973978576520559023667001244432806840395339566',
    '2': '0.42278433509846713939348790991759756895784066406008',
    '3.5': '1.1031566406452431872256903336679110994735070620062',
    '10': '2.2517525890667211076474561638858515372118089180283',
}

TRIGAMMA = {
    '0.25': '17.197329154507110739271319119335224021506894401494',
    '0.5': '4.9348022005446793094172454999380755676568497036204',
    '1': '1.6449340668482264364724151666460251892189499012068',
    '1.5': '0.9348022005446793094172454999380755676568497036204',
    '2': '0.6449340668482264364724151666460251892189499012068',
    '3.5': '0.33035775610023486497280105549363112321240525917595',
    '10': '0.1051663356816857461222010069080559274401643128974',
}

LOG_GAMMA = {
    '0.25': '1.2880225246980774573706104402197172959253775651129',
    '0.5': '0.57236494292470008707171367567652935582364740645766',
    '1': '0.0',
    '1.5': '-0.1207822376352452223455184457816472122518527279026',
    '2': '0.0',
    '3.5': '1.2009736023470742248160218814507129957702389154682',
    '10': '12.801827480081469611207717874566706164281149255663',
}

# 25 points log-spaced on [1e-3, 1e3]
LOG_GAMMA_GRID = {
    '0.001': '6.9071788853838536825123446680769825021599616174461',
    '0.0017782794100389228': '6.3310851536201865506451534972058587492477519116682',
    '0.0031622776601683793': '5.7546456283094314718284186244116373283418259196249',
    '0.0056234132519034908': '5.1775964747249680228853602644288918538196219061109',
    '0.01': '4.5994798780420217225139454110087480872610014133853',
    '0.017782794100389228': '4.0195172658053861568815010741251837933707896397208',
    '0.031622776601683793': '3.4364345378978408765253385372642156431433528607633',
    '0.056234132519034908': '2.8483043543793721534585456406706810649703200311147',
    '0.1': '2.252712651734205959869701646368495118615627222295',
    '0.17782794100389228': '1.6482875790112788035919006062906128461427262259026',
    '0.31622776601683793': '1.0405206474866431799755317120211476034127570678047',
    '0.56234132519034908': '0.45892278847241913715767496989870811221207427168657',
    '1.0': '0.0',
    '1.7782794100389228': '-0.077099307193653052249260295498095695570904839453362',
    '3.1622776601683793': '0.84798811617622904789914406794524193224725825293469',
    '5.6234132519034908': '4.1581500280292373727058121583305390731406381344961',
    '10.0': '12.801827480081469611207717874566706164281149255663',
    '17.782794100389228': '32.884710193056203697930103952687554844532795737408',
    '31.622776601683793': '76.79305925851986402881745734190084402351486224633',
    '56.234132519034908': '169.26830763930675282852128031971381050203564709259',
    '100.0': '359.13420536957539877604401046028690961262171808563',
    '177.82794100389228': '741.79498158209181524064530236274217338141580754879',
    '316.22776601683793': '1502.1665547261249004463031348909352505914997923645',
    '562.34132519034908': '2996.2182765639147536497369408667277403569228211292',
    '1000.0': '5905.2204232091812118260769123614407898489424097154',
}

DIGAMMA_GRID = {
    '0.001': '-1000.5755719318103004714726144696492285001267469059',
    '0.0017782794100389228': '-562.91561949803035736861844170696225499187204146305',
    '0.0031622776601683793': '-316.79979192993376302852577939930140092754925050504',
    '0.0056234132519034908': '-178.39594434570462878900598281716181031107900273171',
    '0.01': '-100.56088545786867449748096130393294889639411056972',
    '0.017782794100389228': '-56.782470799450246329723897570555848711708827149022',
    '0.031622776601683793': '-32.149143720636326630768763112433936023996225484194',
    '0.056234132519034908': '-18.271126922749154945197550267687040627174824639756',
    '0.1': '-10.423754940411076795168216219010025404291642562444',
    '0.17782794100389228': '-5.9409228117675673692278621544057800702196875436122',
    '0.31622776601683793': '-3.313218261153320919896709517908875388064390785969',
    '0.56234132519034908': '-1.6850683648890478712349263660302418856680367412305',
    '1.0': '-0.57721566490153286060651209008240243104215933593992',
    '1.7782794100389228': '0.26885909695499735232433746216642776769732349241047',
    '3.1622776601683793': '0.98492505162720065649072812614571214097684859646579',
    '5.6234132519034908': '1.6353978296521635289990369931755324403294506788617',
    '10.0': '2.2517525890667211076474561638858515372118089180283',
    '17.782794100389228': '2.8498508600529527017814419964342761531732997063587',
    '31.622776601683793': '3.4379829261862625242300384989495258470565832737424',
    '56.234132519034908': '4.0206061642087584835896371525741531214468603163023',
    '100.0': '4.6001618527380874001986055855758507268668127907685',
    '177.82794100389228': '5.17800211738760077714830753730871420399072809066',
    '316.22776601683793': '5.7548807603225300062758119553910745551849870138178',
    '562.34132519034908': '6.3312196025055511547888078532091698237952749921744',
    '1000.0': '6.9072551956488120520500061142514977454795198337689',
}

